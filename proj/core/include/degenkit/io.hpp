// JSON input documents (format_version "1").
#pragma once

#include "degenkit/curves.hpp"
#include "degenkit/degeneration.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace degenkit {

/// Malformed JSON or a document that does not match the schema. `where`
/// is a path such as "branches[1].pairing[0][2]" or "line 3, column 7".
class InputError : public std::runtime_error {
 public:
  InputError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

enum class DocumentKind { Degeneration, Graph };

struct InputDocument {
  DocumentKind kind = DocumentKind::Degeneration;
  DegenDatum datum;
  DualGraph graph;
};

InputDocument parse_document(std::string_view text);
InputDocument load_document(const std::filesystem::path& path);

/// Compact JSON with sorted keys; integers that do not fit in 64 bits are
/// written as strings.
std::string to_json(const DegenDatum& datum);
std::string to_json(const DualGraph& graph);
std::string canonical_json(const InputDocument& doc);

std::uint64_t fnv1a64(std::string_view bytes);
/// 16 lowercase hex digits.
std::string digest_hex(std::uint64_t h);

}  // namespace degenkit

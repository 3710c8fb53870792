#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "grpd/graph.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/presentation.hpp"

namespace grpd::io {

using Json = nlohmann::ordered_json;

/// Unreadable file, malformed JSON, or JSON of the wrong shape.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json load_json(const std::string& path);

/// Raw tables; semantic problems are left to `validate`.
GroupoidTables groupoid_tables_from_json(const Json& j);
Json groupoid_to_json(const Groupoid& g);

Graph graph_from_json(const Json& j);
Json graph_to_json(const Graph& g);

/// {"ring", "basis", "mult", "diagonal_basis", "grading", "provenance"?}; the
/// optional "provenance" lists known normalisers as [[id, "coef"], ...].
RingPresentation presentation_from_json(const Json& j);
Json presentation_to_json(const RingPresentation& p);

}  // namespace grpd::io

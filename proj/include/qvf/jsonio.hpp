#pragma once

#include "qvf/bautin.hpp"
#include "qvf/bounds.hpp"
#include "qvf/field.hpp"
#include "qvf/poincare.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace qvf::jsonio {

using json = nlohmann::ordered_json;

json to_json(const field::FieldParams& f);
json to_json(const field::NormalizeResult& r);
json to_json(const field::CenterResiduals& g, double sigma_distance);
json to_json(const field::SingularPointSet& s);
json to_json(const poincare::CycleSearchResult& r);
json to_json(const poincare::GapReport& r);
json to_json(const bautin::DecompositionReport& r);
json to_json(const bautin::SplittingReport& r);
json to_json(const bounds::BoundReport& r);

// Strict parse of the field schema {"lambda1", "A", "B", "C", "form"} with
// complex entries as [re, im]; throws InputError("BadField") on any mismatch.
// form "raw" runs the normalizer (mu = lambda1 + i); the transform is then set.
struct LoadedField {
  field::FieldParams field;
  std::optional<field::NormalizeTransform> transform;
};
LoadedField field_from_json(const json& j);

// Accepts inline JSON (first non-space character '{') or a file path.
LoadedField load_field_spec(const std::string& spec);

// Canonical dump: 2-space indent plus trailing newline; numbers are emitted
// by shortest round-trip so identical data gives identical bytes.
std::string dump(const json& j);

void write_trajectory_csv(const std::string& path, const poincare::Trajectory& t);

}  // namespace qvf::jsonio

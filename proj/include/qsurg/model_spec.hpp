#pragma once

#include <string>
#include <vector>

#include "qsurg/cocycle.hpp"
#include "qsurg/statesum.hpp"

namespace qsurg {

struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};

/// Model configuration:
///   group.orders = [2, 2]
///   twist.dimension = 4
///   twist.terms = [ {kind = III, indices = (1,1,2), p = 1} ]
/// kinds: II (also type I when the two indices agree), III (three indices;
/// degree decides which variant), IV (four indices).
struct ModelSpec {
  std::string name;
  std::vector<long> orders;
  TwistSpec twist;
  long group_cap = 64;
};

ModelSpec parse_model_text(const std::string& text, const std::string& name);
ModelSpec load_model_file(const std::string& path);
std::string model_spec_text(const ModelSpec& spec);

DWModel build_model(const ModelSpec& spec,
                    long dense_cap = CocycleTable::kDefaultDenseCap);

/// built-in catalog used by tests and the verifier
std::vector<std::string> builtin_model_names();
ModelSpec builtin_model(const std::string& name);

/// FNV-1a of the canonical spec text, for report headers
std::string model_hash(const ModelSpec& spec);

}  // namespace qsurg

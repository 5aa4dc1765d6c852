#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsurg/cyclotomic.hpp"

namespace qsurg {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Sectioned plain-text report; one value per line, exact serialization.
struct Report {
  std::string title;
  std::vector<std::pair<std::string, std::string>> header;
  struct Section {
    std::string name;
    std::vector<std::string> lines;
  };
  std::vector<Section> sections;

  Section& section(const std::string& name);
  std::string text() const;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  Cyc residual;        // zero iff pass for equality checks
  std::string witness; // offending indices, empty if pass
};

std::string check_line(const CheckResult& c);

/// exact value plus optional float view
std::string value_line(const std::string& key, const Cyc& v, bool approx);

}  // namespace qsurg

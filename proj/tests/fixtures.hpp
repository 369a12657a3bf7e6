#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rswork/dsl.hpp"

namespace fx {

inline std::string path(const std::string& name) {
  return std::string(RSWORK_FIXTURE_DIR) + "/" + name + ".rs-dsl";
}

inline rswork::dsl::Workspace load(const std::string& name) { return rswork::dsl::load(path(name)); }

inline rswork::FinRS semigroup(const std::string& name) {
  return rswork::dsl::build(load(name).semigroup());
}

inline std::shared_ptr<const rswork::FinCat> category(const std::string& file, const std::string& name = "") {
  return std::make_shared<const rswork::FinCat>(rswork::dsl::build(load(file).category(name)));
}

// Bundled semigroup fixtures that are restriction semigroups.
inline const std::vector<std::string>& restriction_semigroups() {
  static const std::vector<std::string> v{"i2", "i3", "fab0", "diamond", "chain", "cube", "monoid1"};
  return v;
}

inline const std::vector<std::string>& all_semigroups() {
  static const std::vector<std::string> v{"i2", "i3", "j2", "fab0", "diamond", "chain", "cube", "monoid1"};
  return v;
}

}  // namespace fx

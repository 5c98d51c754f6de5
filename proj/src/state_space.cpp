#include "doxa/state_space.hpp"

namespace doxa {

StateSpace::StateSpace(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ValidationError("state space must be non-empty");
  if (names_.size() > 64) throw ValidationError("state spaces are capped at 64 states");
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    if (names_[i].empty()) throw ValidationError("empty state identifier");
    if (!index_.emplace(names_[i], i).second) {
      throw ValidationError("duplicate state identifier '" + names_[i] + "'");
    }
  }
}

std::optional<int> StateSpace::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int StateSpace::require(const std::string& name) const {
  auto idx = index(name);
  if (!idx) throw ParseError("unknown state '" + name + "'");
  return *idx;
}

std::string StateSpace::describe(StateSet set) const {
  std::string out = "{";
  bool first = true;
  set.for_each([&](int i) {
    if (!first) out += ",";
    out += names_[i];
    first = false;
  });
  return out + "}";
}

}  // namespace doxa

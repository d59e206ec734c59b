#pragma once

#include "posetbal/posetbal.hpp"

namespace fixture {

using posetbal::Poset;

// a = 0 < b = 1, c = 2 unrelated
inline Poset p3() { return Poset::from_relations(3, {{0, 1}}); }
inline Poset vee() { return Poset::from_relations(3, {{0, 1}, {0, 2}}); }
inline Poset wedge() { return Poset::from_relations(3, {{1, 0}, {2, 0}}); }

}  // namespace fixture

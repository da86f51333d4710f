#pragma once

#include "opmc/builders.hpp"
#include "opmc/cofree.hpp"
#include "opmc/random_instance.hpp"

namespace testing_support {

inline opmc::Ring Z() { return opmc::ring_make({opmc::RingKind::integers, 0}); }
inline opmc::Ring Zm(int m) { return opmc::ring_make({opmc::RingKind::integers_mod, m}); }
inline opmc::Ring Q() { return opmc::ring_make({opmc::RingKind::rationals, 0}); }

inline opmc::Element vec(const opmc::Ring& R, std::initializer_list<std::pair<int, int>> terms) {
  opmc::Element e;
  for (auto [i, c] : terms) e.add(R, i, R.from_int(c));
  return e;
}

// A coherent pair of a cooperad and its Hopf structure, owned together.
struct Coop {
  opmc::HopfCooperad hc;
  const opmc::CooperadTruncation& C() const { return hc.C; }
  const opmc::HopfStructure& H() const { return hc.H; }
};

inline Coop ass(const opmc::Ring& R, int rmax) { return {opmc::ass_cochains(R, rmax)}; }
inline Coop e2(const opmc::Ring& R, int rmax) { return {opmc::barratt_eccles(R, 2, rmax, 100)}; }

}  // namespace testing_support

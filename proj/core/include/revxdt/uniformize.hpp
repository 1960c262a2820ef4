#ifndef REVXDT_UNIFORMIZE_HPP
#define REVXDT_UNIFORMIZE_HPP

#include <map>
#include <set>

#include "revxdt/compose.hpp"
#include "revxdt/oracle.hpp"
#include "revxdt/transducer.hpp"

namespace revxdt {

// Behaviour of a suffix seen from its left edge: left-to-left runs
// (forward entry, backward exit) and the forward states from which the final
// state is reached at the right end.
struct BehaviorPair {
  std::set<std::pair<int, int>> llbeh;
  std::set<int> predfin;
  auto operator<=>(const BehaviorPair&) const = default;
};

// behaviour of the empty suffix
BehaviorPair final_behavior(const Transducer& t);

BehaviorPair behavior_step(const Transducer& t, const Index& ix, const Letter& a, const BehaviorPair& b);
BehaviorPair behavior_step(const Transducer& t, const Letter& a, const BehaviorPair& b);

std::string behavior_string(const Transducer& t, const BehaviorPair& b);
// "(a,<behaviour>)"
Letter oracle_letter(const Transducer& t, const Letter& a, const BehaviorPair& b);

struct RightOracle {
  Transducer machine;  // co-deterministic 1FT
  // behaviour carried by each output letter
  std::map<Letter, std::pair<Letter, BehaviorPair>> letters;
};

RightOracle build_right_oracle(const Transducer& t);

struct SliceStep {
  Slice next;
  std::vector<int> transitions;  // indices into t.transitions, in run order
};

// Least slice (shorter first, then by state order) at the boundary after `a`
// that can follow `prev` across `a` and still reach the final state on the
// suffix described by `b`. nullopt means no accepting continuation.
std::optional<SliceStep> slice_update(const Transducer& t, const Index& ix, const Slice& prev,
                                      const Letter& a, const BehaviorPair& b);

std::string slice_id(const Transducer& t, const Slice& s);
Letter slice_letter(const Transducer& t, const std::vector<int>& transitions);

struct Uniformizer {
  Transducer machine;  // deterministic 1FT
  std::map<Letter, std::vector<int>> slice_letters;
};

Uniformizer build_uniformizer(const Transducer& t, const RightOracle& oracle);
Uniformizer build_uniformizer(const Transducer& t);

// Follows the run spelled by the slice letters; same polarities as t plus
// entry/exit states.
Transducer build_follower(const Transducer& t, const std::map<Letter, std::vector<int>>& slice_letters);

struct UniformizeOptions {
  size_t max_states = default_max_states();
};

Transducer uniformize(const Transducer& t, const UniformizeOptions& opt = {});

// Slices chosen by the uniformizer on u, boundary by boundary; nullopt when u is rejected.
std::optional<std::vector<Slice>> uniformizer_slices(const Transducer& t, const Word& u);

}  // namespace revxdt

#endif

#ifndef REVXDT_TREE_OUTLINE_HPP
#define REVXDT_TREE_OUTLINE_HPP

#include "revxdt/compose.hpp"
#include "revxdt/transducer.hpp"

namespace revxdt {

// live = above the branch, printed "^"; dead = below, printed "_"
enum class Mark { Live, Dead };

struct MarkedPair {
  Mark upper_mark = Mark::Live;
  int upper = 0;
  Mark lower_mark = Mark::Dead;
  int lower = 0;

  bool forward() const { return upper_mark != lower_mark; }
  // pairs with equal markers on the same state are not states
  bool valid() const { return forward() || upper != lower; }
  auto operator<=>(const MarkedPair&) const = default;
};

std::string marked_pair_id(const Transducer& t, const MarkedPair& s);

// Throws precondition-violation unless t is one-way, co-deterministic,
// branches on each letter from at most one state into exactly two successors,
// and only ever reads the right endmarker into the final state.
void check_outline_preconditions(const Transducer& t);

// 4m^2 - 2m states; every transition carries its rule tag.
Transducer tree_outline(const Transducer& t);

size_t outline_state_count(size_t m);

// Same machine, one step at a time; used by compositions that only touch a
// small reachable part.
class OutlineStepper : public Stepper {
 public:
  explicit OutlineStepper(const Transducer& t);

  int num_states() const override { return 4 * m_ * m_; }
  bool valid(int s) const override;
  std::string state_id(int s) const override;
  bool forward(int s) const override { return decode(s).forward(); }
  int initial() const override;
  int final() const override;
  std::vector<Letter> input_alphabet() const override { return t_.input_alphabet; }
  std::vector<Letter> output_alphabet() const override { return t_.output_alphabet; }
  std::optional<Step> step(int s, const Letter& a) const override;

  // also reports the rule tag
  std::optional<std::pair<Step, const char*>> step_tagged(int s, const Letter& a) const;

  int encode(const MarkedPair& s) const;
  MarkedPair decode(int s) const;

 private:
  struct Succ {
    int min = -1, max = -1;
    int min_tr = -1, max_tr = -1;  // transition indices in t_
  };
  struct Pred {
    int from = -1;
    int tr = -1;
  };
  const Succ& succ(int p, int a) const { return succ_[static_cast<size_t>(p) * nl_ + a]; }
  const Pred& pred(int q, int a) const { return pred_[static_cast<size_t>(q) * nl_ + a]; }

  const Transducer& t_;
  Index ix_;
  int m_;
  int nl_;
  std::vector<Succ> succ_;
  std::vector<Pred> pred_;
};

// DOT rendering of the tree of initial runs of a one-way machine on a word.
std::string run_tree_dot(const Transducer& t, const Word& u);

}  // namespace revxdt

#endif

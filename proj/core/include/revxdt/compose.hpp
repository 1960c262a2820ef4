#ifndef REVXDT_COMPOSE_HPP
#define REVXDT_COMPOSE_HPP

#include <cstddef>
#include <memory>
#include <optional>

#include "revxdt/transducer.hpp"

namespace revxdt {

struct Step {
  int to = 0;
  Word output;
};

// Deterministic machine given by its step function. Lets large constructions
// (the tree outline in particular) be explored lazily from a composition.
class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual int num_states() const = 0;
  virtual bool valid(int s) const { return s >= 0 && s < num_states(); }
  virtual std::string state_id(int s) const = 0;
  virtual bool forward(int s) const = 0;
  virtual int initial() const = 0;
  virtual int final() const = 0;
  virtual std::vector<Letter> input_alphabet() const = 0;
  virtual std::vector<Letter> output_alphabet() const = 0;
  virtual std::optional<Step> step(int s, const Letter& a) const = 0;
};

class TransducerStepper : public Stepper {
 public:
  explicit TransducerStepper(const Transducer& t) : t_(t), ix_(t) {}
  int num_states() const override { return t_.size(); }
  std::string state_id(int s) const override { return t_.id(s); }
  bool forward(int s) const override { return t_.forward(s); }
  int initial() const override { return t_.initial; }
  int final() const override { return t_.final; }
  std::vector<Letter> input_alphabet() const override { return t_.input_alphabet; }
  std::vector<Letter> output_alphabet() const override { return t_.output_alphabet; }
  std::optional<Step> step(int s, const Letter& a) const override;

 private:
  const Transducer& t_;
  Index ix_;
};

enum class RunKind { LeftToRight, LeftToLeft, RightToRight, RightToLeft };

const char* to_string(RunKind k);

struct EndToEndRun {
  int entry = 0;
  Word word;
  int exit = 0;
  RunKind kind = RunKind::LeftToRight;
  Word production;
};

// Runs the deterministic machine inside `v` from one edge; nullopt when it
// blocks or loops before leaving the fragment.
std::optional<EndToEndRun> simulate_fragment(const Stepper& m, const Word& v, int entry);

std::vector<EndToEndRun> end_to_end_runs(const Transducer& t, const Word& v);

size_t default_max_states();  // REVXDT_MAX_STATES or 10^6

struct ComposeOptions {
  // explore only states reachable from the initial pair, then trim
  bool reachable_only = false;
  size_t max_states = default_max_states();
};


Transducer compose_reversible(const Transducer& t1, const Transducer& t2,
                              const ComposeOptions& opt = {});
// second machine given lazily; always explores reachable pairs only
Transducer compose_reversible(const Transducer& t1, const Stepper& t2,
                              const ComposeOptions& opt = {});

}  // namespace revxdt

#endif

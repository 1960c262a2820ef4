#ifndef REVXDT_TRANSDUCER_HPP
#define REVXDT_TRANSDUCER_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace revxdt {

using Letter = std::string;
using Word = std::vector<Letter>;

inline const Letter kBegin = "__begin__";
inline const Letter kEnd = "__end__";

inline bool is_endmarker(const Letter& a) { return a == kBegin || a == kEnd; }

// Errors carry a stable machine-readable code next to the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

enum class Polarity { Forward, Backward };

struct State {
  std::string id;
  Polarity polarity = Polarity::Forward;
};

struct Transition {
  int from = 0;
  Letter letter;
  int to = 0;
  Word output;
  std::string tag;  // rule that generated the transition, empty for user input
};

// Declaration order of `states` is the total order used by every construction.
struct Transducer {
  std::string name;
  std::vector<Letter> input_alphabet;  // without endmarkers
  std::vector<Letter> output_alphabet;
  std::vector<State> states;
  int initial = 0;
  int final = 0;
  std::vector<Transition> transitions;

  int size() const { return static_cast<int>(states.size()); }
  bool forward(int s) const { return states[s].polarity == Polarity::Forward; }
  int find_state(std::string_view id) const;
  const std::string& id(int s) const { return states[s].id; }
  bool one_way() const;
};

bool structurally_equal(const Transducer& a, const Transducer& b);

// Incremental construction: states by id, alphabets collected from use.
class Builder {
 public:
  explicit Builder(std::string name = {});

  int state(const std::string& id, Polarity p = Polarity::Forward);
  int find(const std::string& id) const;
  void transition(int from, const Letter& a, int to, Word output = {}, std::string tag = {});
  void transition(const std::string& from, const Letter& a, const std::string& to,
                  Word output = {});
  void initial(int s) { t_.initial = s; }
  void final(int s) { t_.final = s; }
  void input_letter(const Letter& a);
  void output_letter(const Letter& b);
  int size() const { return t_.size(); }
  Transducer build();

 private:
  Transducer t_;
  std::unordered_map<std::string, int> ids_;
  std::unordered_map<std::string, bool> in_seen_, out_seen_;
};

// Per-state transition lookup by letter, in both directions.
class Index {
 public:
  explicit Index(const Transducer& t);

  const Transducer& machine() const { return *t_; }
  int letter_id(const Letter& a) const;
  int num_letters() const { return static_cast<int>(letters_.size()); }
  const Letter& letter(int id) const { return letters_[id]; }
  std::vector<int> encode(const Word& w) const;

  // (letter id, transition index) pairs leaving / entering `s` on letter id `a`
  std::span<const std::pair<int, int>> out(int s, int a) const;
  std::span<const std::pair<int, int>> in(int s, int a) const;
  std::vector<int> out_all(int s) const;
  std::vector<int> in_all(int s) const;
  bool deterministic() const { return deterministic_; }

 private:
  const Transducer* t_;
  std::vector<Letter> letters_;
  std::unordered_map<Letter, int> letter_ids_;
  // (letter, transition) pairs sorted by letter, per state
  std::vector<std::vector<std::pair<int, int>>> out_, in_;
  bool deterministic_ = true;
};

struct Config {
  int state = 0;
  int pos = 0;
  auto operator<=>(const Config&) const = default;
};

struct ConfigHash {
  size_t operator()(const Config& c) const {
    return std::hash<uint64_t>()((static_cast<uint64_t>(c.state) << 32) ^
                                 static_cast<uint32_t>(c.pos));
  }
};

struct RunStep {
  Config config;
  int transition = -1;  // transition taken to leave `config`
};

struct Run {
  Word word;  // endmarked
  std::vector<RunStep> steps;
  Config last;

  bool is_simple() const;
  std::vector<Config> configs() const;
  std::vector<int> transitions() const;
};

Word run_output(const Transducer& t, const Run& r);

Word wrap_input(const Word& u);
// "ab" -> [a,b]; input containing whitespace is split on it instead
Word parse_word(std::string_view s);
std::string format_word(const Word& w);

// Position rules: forward reads w[i] and needs i < |w|, backward reads w[i-1] and needs i > 0.
std::vector<std::pair<Config, int>> successors(const Index& ix, const std::vector<int>& w,
                                               Config c);
std::vector<std::pair<Config, int>> successors(const Transducer& t, const Word& w, Config c);
std::vector<std::pair<Config, int>> predecessors(const Index& ix, const std::vector<int>& w,
                                                 Config c);

struct Outcome {
  enum class Kind { Accepted, Rejected, Diverges };
  Kind kind = Kind::Rejected;
  Word output;
  Run run;
};

Outcome run_deterministic(const Index& ix, const Word& u);
Outcome run_deterministic(const Transducer& t, const Word& u);

struct PropertyReport {
  bool deterministic = true;
  bool codeterministic = true;
  bool weakly_branching = true;
  bool reversible = true;
  bool one_way = true;
  // offending transition index pairs
  std::optional<std::pair<int, int>> det_witness;
  std::optional<std::pair<int, int>> codet_witness;
  std::optional<std::pair<int, int>> wb_witness;
  // letters on which some state branches, with that state
  std::vector<std::pair<Letter, int>> branching;
};

PropertyReport check_properties(const Transducer& t);
std::string describe_transition(const Transducer& t, int i);

struct Diagnostics {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

Diagnostics validate(const Transducer& t);

// Graph-level trimming: drops states not on an initial-to-final path of the
// transition graph. Head movement is ignored, so this over-approximates.
Transducer trim(const Transducer& t);

// Replace state ids by prefix + index; keeps order and polarity.
Transducer renumber(const Transducer& t, const std::string& prefix = "s");

}  // namespace revxdt

#endif

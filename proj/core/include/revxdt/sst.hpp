#ifndef REVXDT_SST_HPP
#define REVXDT_SST_HPP

#include <map>
#include <optional>

#include "revxdt/oneway.hpp"
#include "revxdt/transducer.hpp"

namespace revxdt {

struct Symbol {
  bool is_var = false;
  std::string text;  // variable name or output letter
  auto operator<=>(const Symbol&) const = default;
};

using Image = std::vector<Symbol>;
using Substitution = std::map<std::string, Image>;

// "${X}ab${Y}" <-> [X, a, b, Y]; any other character is a one-character letter
Image parse_image(const std::string& s);
std::string format_image(const Image& img);

Substitution identity_substitution(const std::vector<std::string>& vars);
// s2 after s1: every variable of s1's images replaced by its s2 image
Substitution compose_substitutions(const Substitution& s2, const Substitution& s1);
// drop the variables, keep the letters
Word erase_variables(const Image& img);

// nullopt when copyless, otherwise what is duplicated
std::optional<std::string> copyless_violation(const Substitution& s);

struct SstTransition {
  int from = 0;
  Letter letter;
  int to = 0;
  Substitution tau;  // variables left out map to themselves
};

struct Sst {
  std::string name;
  std::vector<Letter> input_alphabet;
  std::vector<Letter> output_alphabet;
  std::vector<std::string> states;
  int initial = 0;
  int final = 0;
  std::vector<SstTransition> transitions;
  std::vector<std::string> variables;
  std::string final_variable;

  // tau of transition i with every variable present
  Substitution full_tau(int i) const;
};

void validate_sst(const Sst& s);

struct CopylessReport {
  bool ok = true;
  std::string witness;
};

// every transition copyless, and every composition of two consecutive transitions too
CopylessReport check_copyless(const Sst& s);

std::optional<Word> eval_sst(const Sst& s, const Word& u);

// "{O:=${X}${Y};X:=;Y:=}" with variables sorted
Letter substitution_letter(const Substitution& s);

// underlying automaton emitting one substitution letter per transition
Transducer strip_sst(const Sst& s);

// init, X.in / X.out per variable, fin; reads substitution letters
Transducer build_navigator(const Sst& s);

Transducer sst_to_reversible(const Sst& s, const PipelineOptions& opt = {});

size_t sst_pipeline_states(size_t n, size_t m);

}  // namespace revxdt

#endif

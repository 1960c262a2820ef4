#ifndef REVXDT_ORACLE_HPP
#define REVXDT_ORACLE_HPP

#include <map>
#include <set>

#include "revxdt/transducer.hpp"

namespace revxdt {

inline constexpr int kDefaultWordBound = 8;

struct Relation {
  int max_len = 0;
  std::map<Word, std::set<Word>> pairs;  // accepted input -> outputs

  size_t size() const;
  bool contains(const Word& u, const Word& v) const;
  bool operator==(const Relation&) const = default;
};

// All words over `alphabet` of length <= max_len in shortlex order.
std::vector<Word> all_words(const std::vector<Letter>& alphabet, int max_len);

// Depth-first enumeration of simple accepting runs on the wrapped word.
std::vector<Run> enumerate_accepting_runs(const Index& ix, const Word& u,
                                          int bound = kDefaultWordBound);
std::vector<Run> enumerate_accepting_runs(const Transducer& t, const Word& u,
                                          int bound = kDefaultWordBound);

// Outputs of the simple accepting runs on u.
std::set<Word> outputs(const Index& ix, const Word& u, int bound = kDefaultWordBound);

Relation relation(const Transducer& t, int max_len);

struct EquivResult {
  bool equal = true;
  Word word;  // shortlex-minimal differing input when !equal
  std::set<Word> left, right;
};

EquivResult check_equiv(const Transducer& a, const Transducer& b, int max_len);

struct UniformResult {
  bool ok = true;
  std::string reason;
  Word word;
  std::set<Word> chosen, allowed;
};

UniformResult check_uniformizes(const Transducer& tu, const Transducer& t, int max_len);

// Longest run of a one-way machine from p reading a prefix of u (letters may be endmarkers).
int longrun(const Transducer& t, const Word& u, int p);

using Slice = std::vector<int>;

Slice slice(const Run& r, int boundary);
std::vector<Slice> slices(const Run& r);
// shorter first, then pointwise by declaration order
bool lex_less(const Slice& a, const Slice& b);
// boundary by boundary, left to right
bool sl_less(const std::vector<Slice>& a, const std::vector<Slice>& b);

Run minimal_run(const Transducer& t, const Word& u);

}  // namespace revxdt

#endif

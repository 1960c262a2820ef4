// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria, so ctest goes red on any of them.
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

#include "brute.hpp"
#include "revxdt/compose.hpp"
#include "revxdt/io.hpp"
#include "revxdt/oneway.hpp"
#include "revxdt/oracle.hpp"
#include "revxdt/sst.hpp"
#include "revxdt/transducer.hpp"
#include "revxdt/tree_outline.hpp"
#include "revxdt/uniformize.hpp"

using namespace revxdt;

namespace {

const std::string kFixtures = REVXDT_FIXTURES_DIR;

Transducer fixture(const std::string& name) { return load_transducer(kFixtures + "/" + name + ".json"); }

const std::vector<Letter> kAB{"a", "b"};

// Collects the first few reasons a criterion failed.
struct Verdict {
  int checks = 0;
  std::vector<std::string> problems;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && problems.size() < 5) problems.push_back(what);
    if (!ok && problems.size() == 5) problems.push_back("...");
  }
  bool ok() const { return problems.empty(); }
};

std::string show(const Word& w) { return "\"" + format_word(w) + "\""; }

std::string show(const std::set<Word>& s) {
  std::string r = "{";
  for (const auto& w : s) r += (r.size() > 1 ? "," : "") + show(w);
  return r + "}";
}

// compare brute-force relations, naming the first difference
void same_relation(Verdict& v, const brute::Rel& got, const brute::Rel& want, const std::string& what) {
  if (got == want) {
    v.expect(true, what);
    return;
  }
  std::set<Word> keys;
  for (const auto& [u, o] : got) keys.insert(u);
  for (const auto& [u, o] : want) keys.insert(u);
  for (const auto& u : keys) {
    auto g = got.count(u) ? got.at(u) : std::set<Word>{};
    auto w = want.count(u) ? want.at(u) : std::set<Word>{};
    if (g != w) {
      v.expect(false, what + ": on " + show(u) + " got " + show(g) + " want " + show(w));
      return;
    }
  }
}

size_t outline_formula(size_t m) { return 4 * m * m - 2 * m; }
size_t codet_formula(size_t n) { return outline_formula(2 * n + 2); }
size_t det_formula(size_t n) { return 9 * codet_formula(n); }

// ---- 1 ----
Verdict composition_counts() {
  Verdict v;
  auto mirror = build_mirror(kAB);
  auto mm = compose_reversible(mirror, mirror);
  v.expect(mm.size() == 9, "mirror o mirror has " + std::to_string(mm.size()) + " states");
  brute::Rng rng(101);
  for (int i = 0; i < 3; ++i) {
    int n1 = 3 + static_cast<int>(rng() % 3), n2 = 3 + static_cast<int>(rng() % 3);
    auto t1 = brute::random_reversible(rng, n1, kAB, kAB);
    auto t2 = brute::random_reversible(rng, n2, kAB, kAB);
    auto c = compose_reversible(t1, t2);
    v.expect(c.size() == n1 * n2, "random pair " + std::to_string(i) + ": " + std::to_string(c.size()) +
                                      " != " + std::to_string(n1 * n2));
    v.expect(brute::reversible(c), "random pair " + std::to_string(i) + " not reversible");
  }
  return v;
}

// ---- 2 ----
Verdict composition_semantics() {
  Verdict v;
  std::vector<std::string> names{"id", "swap", "mirror", "dup", "a2"};
  std::vector<Transducer> rev;
  for (const auto& n : names) {
    auto t = fixture(n);
    v.expect(brute::reversible(t), n + " fixture is not reversible");
    rev.push_back(t);
  }
  for (size_t i = 0; i < rev.size(); ++i)
    for (size_t j = 0; j < rev.size(); ++j) {
      // T1's output letters have to be T2's input letters
      const auto& t1 = rev[i];
      const auto& t2 = rev[j];
      bool fits = std::all_of(t1.output_alphabet.begin(), t1.output_alphabet.end(), [&](const Letter& b) {
        return std::count(t2.input_alphabet.begin(), t2.input_alphabet.end(), b) > 0;
      });
      if (!fits) continue;
      auto c = compose_reversible(t1, t2);
      std::string what = names[i] + " ; " + names[j];
      v.expect(brute::reversible(c), what + " not reversible");
      same_relation(v, brute::relation(c, 4), brute::compose(t1, t2, 4), what);
    }
  brute::Rng rng(202);
  int tried = 0;
  for (int found = 0; found < 10 && tried < 500; ++tried) {
    auto t1 = brute::random_reversible(rng, 3 + static_cast<int>(rng() % 2), kAB, kAB);
    auto t2 = brute::random_reversible(rng, 3 + static_cast<int>(rng() % 2), kAB, kAB);
    if (brute::relation(t1, 4).size() < 3) continue;
    ++found;
    same_relation(v, brute::relation(compose_reversible(t1, t2), 4), brute::compose(t1, t2, 4),
                  "random pair " + std::to_string(found));
  }
  return v;
}

// ---- 3 ----
void outline_one(Verdict& v, const Transducer& t, const std::string& what) {
  auto r = tree_outline(t);
  v.expect(brute::reversible(r), what + ": outline not reversible");
  v.expect(static_cast<size_t>(r.size()) == outline_formula(t.size()),
           what + ": " + std::to_string(r.size()) + " states, want " + std::to_string(outline_formula(t.size())));
  v.expect(static_cast<size_t>(r.size()) <= 4u * t.size() * t.size(), what + ": above 4m^2");
  same_relation(v, brute::relation(r, 5), brute::relation(t, 5), what);
}

Verdict tree_outline_checks() {
  Verdict v;
  outline_one(v, fixture("t1"), "t1");
  brute::Rng rng(303);
  int nonempty = 0;
  for (int i = 0; i < 50; ++i) {
    int m = 2 + static_cast<int>(rng() % 3);
    std::vector<Letter> alpha = rng() % 2 ? kAB : std::vector<Letter>{"a"};
    auto t = brute::random_codet_wb(rng, m, alpha, kAB);
    if (!brute::relation(t, 5).empty()) ++nonempty;
    outline_one(v, t, "random #" + std::to_string(i));
  }
  v.notes.push_back(std::to_string(nonempty) + "/50 random machines accept something");
  return v;
}

// ---- 4 ----
// T-run from p to q on v (one-way, co-deterministic so unique); nullopt if none
std::optional<Word> one_way_output(const Transducer& t, const Word& v, int p, int q) {
  // walk back from q: each (letter, target) has one source
  Word out;
  int cur = q;
  std::vector<const Transition*> path;
  for (size_t k = v.size(); k-- > 0;) {
    const Transition* in = nullptr;
    for (const auto& tr : t.transitions)
      if (tr.to == cur && tr.letter == v[k]) in = &tr;
    if (!in) return std::nullopt;
    path.push_back(in);
    cur = in->from;
  }
  if (cur != p) return std::nullopt;
  for (size_t k = path.size(); k-- > 0;) out.insert(out.end(), path[k]->output.begin(), path[k]->output.end());
  return out;
}

Verdict lemma_checks() {
  Verdict v;
  brute::Rng rng(404);
  int seq_strict = 0, acc_nonempty = 0, acc_ties = 0;
  auto id = [](const Transducer& t, const Transducer& r, Mark um, int p, Mark lm, int q) {
    return r.find_state(marked_pair_id(t, MarkedPair{um, p, lm, q}));
  };
  const Mark L = Mark::Live, D = Mark::Dead;
  for (int sample = 0; sample < 200; ++sample) {
    int m = 3 + static_cast<int>(rng() % 2);
    auto t = brute::random_codet_wb(rng, m, kAB, kAB);
    auto r = tree_outline(t);
    // u over the endmarked alphabet; pick (u, p, q) with longrun(p) < |u|
    Word u;
    int p = 0, q = 1;
    bool found = false;
    for (int tries = 0; tries < 200 && !found; ++tries) {
      u = brute::random_word(rng, brute::all_letters(kAB), 5);
      p = static_cast<int>(rng() % m);
      q = static_cast<int>(rng() % m);
      found = p != q && brute::longest_run(t, u, p) < static_cast<int>(u.size());
    }
    if (!found) {
      v.expect(false, "sample " + std::to_string(sample) + ": no (u,p,q) found");
      continue;
    }
    std::string tag = "sample " + std::to_string(sample) + " u=" + show(u) + " p=" + t.id(p) + " q=" + t.id(q);
    const int lp = brute::longest_run(t, u, p), lq = brute::longest_run(t, u, q);
    auto expect_run = [&](int from, int to, const std::string& which) {
      auto e = brute::walk_fragment(r, u, from);
      bool ok = e && !e->right && e->state == to && e->output.empty();
      v.expect(ok, tag + ": " + which + (e ? " ended in " + r.id(e->state) : " blocked"));
    };
    if (lp <= lq) {
      expect_run(id(t, r, L, p, D, q), id(t, r, D, p, D, q), "live rho1");
      expect_run(id(t, r, D, p, L, q), id(t, r, L, p, L, q), "dead rho1");
    }
    if (lp < lq) {
      ++seq_strict;
      expect_run(id(t, r, D, q, L, p), id(t, r, D, q, D, p), "live rho2");
      expect_run(id(t, r, L, q, D, p), id(t, r, L, q, L, p), "dead rho2");
    }
    // acc_state for both states of the pair
    for (int s : {p, q}) {
      const int ls = brute::longest_run(t, u, s);
      Word prefix(u.begin(), u.begin() + ls);
      auto e = brute::walk_fragment(r, prefix, id(t, r, L, s, D, s));
      if (!e || !e->right) {
        v.expect(false, tag + ": acc_state from " + t.id(s) + " did not cross " + show(prefix));
        continue;
      }
      // states in which a T-run from s over the prefix ends
      std::vector<int> ends;
      for (int c = 0; c < m; ++c)
        if (one_way_output(t, prefix, s, c)) ends.push_back(c);
      if (ends.size() > 1) {
        // the diagonal exit needs a unique longest run; with two, the
        // outline leaves holding both survivors, larger one live
        ++acc_ties;
        v.expect(e->state == id(t, r, L, ends.back(), D, ends.front()) && ends.size() == 2,
                 tag + ": tied acc_state from " + t.id(s) + " ended in " + r.id(e->state));
        continue;
      }
      // exit must be the diagonal pair (^x,_x) with the T-run s -> x producing the same
      int x = ends.empty() ? -1 : ends.front();
      auto mu = x < 0 ? std::nullopt : one_way_output(t, prefix, s, x);
      v.expect(mu.has_value() && e->state == id(t, r, L, x, D, x) && *mu == e->output,
               tag + ": acc_state from " + t.id(s) + " ended in " + r.id(e->state));
      if (!prefix.empty()) ++acc_nonempty;
    }
  }
  v.notes.push_back(std::to_string(seq_strict) + " samples with strict longrun order, " +
                    std::to_string(acc_nonempty) + " acc_state runs over nonempty prefixes, " +
                    std::to_string(acc_ties) + " with two longest runs");
  return v;
}

// ---- 5 ----
Verdict pipelines() {
  Verdict v;
  auto run = [&](const Transducer& t, bool det, const std::string& what) {
    Transducer r = det ? det1ft_to_reversible(t) : codet1ft_to_reversible(t);
    size_t want = det ? det_formula(t.size()) : codet_formula(t.size());
    v.expect(static_cast<size_t>(r.size()) == want,
             what + ": " + std::to_string(r.size()) + " states, formula " + std::to_string(want));
    v.expect(brute::reversible(r), what + ": not reversible");
    same_relation(v, brute::relation(r, 5), brute::relation(t, 5), what);
  };
  run(fixture("t1"), false, "t1 codet");
  run(reverse_1ft(fixture("a1_copy")), false, "reverse(a1_copy) codet");
  run(fixture("a1"), true, "a1 det");
  run(fixture("a1_copy"), true, "a1_copy det");
  brute::Rng rng(505);
  for (int i = 0; i < 25; ++i) {
    int n = 2 + static_cast<int>(rng() % 3);
    run(brute::random_codet(rng, n, kAB, kAB), false, "random codet #" + std::to_string(i));
  }
  for (int i = 0; i < 25; ++i) {
    int n = 2 + static_cast<int>(rng() % 3);
    run(brute::random_det(rng, n, kAB, kAB), true, "random det #" + std::to_string(i));
  }
  v.notes.push_back("codet count 4(2n+2)^2-2(2n+2), det count 9x that");
  return v;
}

// ---- 6 ----
Verdict mirror_checks() {
  Verdict v;
  auto m = build_mirror(kAB);
  v.expect(m.size() == 3, "mirror has " + std::to_string(m.size()) + " states");
  v.expect(brute::reversible(m), "mirror not reversible");
  for (const auto& u : brute::words_upto(kAB, 8)) {
    auto o = brute::outputs(m, u);
    v.expect(o == std::set<Word>{brute::reversed(u)}, "mirror on " + show(u) + " gives " + show(o));
  }
  return v;
}

// ---- 7 ----
Verdict uniformize_checks() {
  Verdict v;
  auto t = fixture("rel");
  bool two = false;
  for (const auto& [u, o] : brute::relation(t, 4)) two |= o.size() > 1;
  v.expect(two, "rel has no input with two outputs");

  auto tu = uniformize(t);
  v.expect(brute::reversible(tu), "uniformizer not reversible");
  for (const auto& u : brute::words_upto(kAB, 4)) {
    auto allowed = brute::outputs(t, u);
    auto chosen = brute::outputs(tu, u);
    if (allowed.empty()) {
      v.expect(chosen.empty(), "accepts " + show(u) + " outside the domain");
      continue;
    }
    if (chosen.size() != 1) {
      v.expect(false, "on " + show(u) + " produced " + show(chosen));
      continue;
    }
    v.expect(allowed.count(*chosen.begin()) > 0, "on " + show(u) + " chose " + show(chosen));
    auto least = brute::least_run(t, u);
    v.expect(least && least->output == *chosen.begin(),
             "on " + show(u) + " chose " + show(chosen) + ", least run gives " +
                 (least ? show(least->output) : std::string("nothing")));
  }
  auto lib = check_uniformizes(tu, t, 4);
  v.expect(lib.ok, "check_uniformizes: " + lib.reason);

  // lazily built state sets against the stated bounds
  const size_t n = t.size();
  auto oracle = build_right_oracle(t);
  double behaviours = std::pow(2.0, static_cast<double>(n * n + n));
  v.expect(oracle.machine.size() - 1 <= behaviours, "right oracle above 2^(n^2+n)");
  size_t seqs = 0, perm = 1;
  for (size_t k = 0; k <= n; ++k) {
    seqs += perm;
    perm *= n - k;
  }
  auto un = build_uniformizer(t);
  v.expect(static_cast<size_t>(un.machine.size()) <= seqs + 2, "uniformizer above the repeat-free bound");
  v.notes.push_back("right oracle " + std::to_string(oracle.machine.size()) + " states, uniformizer " +
                    std::to_string(un.machine.size()) + ", result " + std::to_string(tu.size()));
  return v;
}

// ---- 8 ----
void slices_one(Verdict& v, const Transducer& t, const std::string& what, int& words) {
  for (const auto& u : brute::words_upto(t.input_alphabet, 4)) {
    auto least = brute::least_run(t, u);
    auto got = uniformizer_slices(t, u);
    if (!least) {
      v.expect(!got.has_value(), what + ": slices for rejected " + show(u));
      continue;
    }
    ++words;
    auto want = brute::run_slices(*least, static_cast<int>(u.size()) + 2);
    bool same = got && got->size() == want.size();
    for (size_t i = 0; same && i < want.size(); ++i) same = (*got)[i] == want[i];
    v.expect(same, what + ": slices differ on " + show(u));
  }
}

Verdict slice_checks() {
  Verdict v;
  int words = 0;
  slices_one(v, fixture("rel"), "rel", words);
  brute::Rng rng(808);
  int found = 0, tries = 0;
  while (found < 10 && tries < 2000) {
    ++tries;
    auto t = brute::random_2ft(rng, 3 + static_cast<int>(rng() % 2), kAB, kAB, 12);
    // want something accepted, and some input with more than one run
    auto rel = brute::relation(t, 4);
    bool ambiguous = false;
    for (const auto& u : brute::words_upto(kAB, 4)) ambiguous |= brute::accepting_runs(t, u).size() > 1;
    if (rel.size() < 2 || !ambiguous) continue;
    ++found;
    slices_one(v, t, "random #" + std::to_string(found), words);
  }
  v.expect(found == 10, "only " + std::to_string(found) + " random machines generated");
  v.notes.push_back(std::to_string(words) + " accepted words compared");
  return v;
}

// ---- 9 ----
Verdict sst_checks() {
  Verdict v;
  auto s = load_sst(kFixtures + "/sst_pal.json");
  auto nav = build_navigator(s);
  v.expect(brute::reversible(nav), "navigator not reversible");
  v.expect(static_cast<size_t>(nav.size()) == 2 * s.variables.size() + 2, "navigator size");
  auto r = sst_to_reversible(s);
  const size_t n = s.states.size(), m = s.variables.size();
  const size_t want = (2 * m + 2) * det_formula(n);
  v.expect(static_cast<size_t>(r.size()) == want,
           std::to_string(r.size()) + " states, formula " + std::to_string(want));
  v.expect(brute::reversible(r), "result not reversible");
  for (const auto& u : brute::words_upto(kAB, 6)) {
    auto e = eval_sst(s, u);
    Word pal = u;
    for (auto it = u.rbegin(); it != u.rend(); ++it) pal.push_back(*it);
    v.expect(e && *e == pal, "eval on " + show(u));
    auto o = brute::outputs(r, u);
    v.expect(e && o == std::set<Word>{*e}, "reversible machine on " + show(u) + " gives " + show(o));
  }
  v.notes.push_back(std::to_string(r.size()) + " raw states = (2m+2)*9*(4(2n+2)^2-2(2n+2)), n=" +
                    std::to_string(n) + " m=" + std::to_string(m));
  return v;
}

// ---- 10 ----
Verdict fixture_checks() {
  Verdict v;
  auto a1 = fixture("a1"), a2 = fixture("a2"), t1 = fixture("t1");
  v.expect(brute::deterministic(a1) && !brute::codeterministic(a1), "A1 flags");
  v.expect(brute::reversible(a2), "A2 not reversible");
  for (const auto& u : brute::words_upto(kAB, 8)) {
    bool want = brute::contains_aa(u);
    v.expect(!brute::outputs(a1, u).empty() == want, "A1 on " + show(u));
    v.expect(!brute::outputs(a2, u).empty() == want, "A2 on " + show(u));
  }
  // the run tree on "ab": exactly one red leaf, and its branch is qI 1 1 0 qF
  std::string dot = run_tree_dot(t1, {"a", "b"});
  std::map<std::string, std::string> label, parent;
  std::vector<std::string> red;
  std::regex node(R"re((n\d+) \[label="([^"]*)"(, color=red)?\])re"), edge(R"((n\d+) -> (n\d+))");
  std::istringstream in(dot);
  for (std::string line; std::getline(in, line);) {
    std::smatch mt;
    if (std::regex_search(line, mt, edge)) {
      parent[mt[2]] = mt[1];
    } else if (std::regex_search(line, mt, node)) {
      label[mt[1]] = mt[2];
      if (mt[3].matched) red.push_back(mt[1]);
    }
  }
  v.expect(red.size() == 1, std::to_string(red.size()) + " red leaves");
  if (red.size() == 1) {
    std::vector<std::string> branch;
    for (std::string x = red[0];; x = parent[x]) {
      branch.insert(branch.begin(), label[x]);
      if (!parent.count(x)) break;
    }
    v.expect(branch == std::vector<std::string>{"qI", "1", "1", "0", "qF"}, "red branch");
  }
  auto runs = brute::accepting_runs(t1, {"a", "b"});
  v.expect(runs.size() == 1, "T1 has " + std::to_string(runs.size()) + " accepting runs on ab");
  if (runs.size() == 1) {
    std::vector<std::string> states;
    for (const auto& c : runs[0].confs) states.push_back(t1.id(c.state));
    v.expect(states == std::vector<std::string>{"qI", "1", "1", "0", "qF"}, "T1 accepting run");
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Verdict (*fn)();
  };
  const Criterion all[] = {
      {"composition state count n1*n2", composition_counts},
      {"composition semantics vs relational composition", composition_semantics},
      {"tree outline: reversible, 4m^2-2m states, equivalent", tree_outline_checks},
      {"outline run lemmas on 200 samples", lemma_checks},
      {"one-way pipelines reversible and equivalent", pipelines},
      {"mirror over {a,b}", mirror_checks},
      {"uniformization of rel", uniformize_checks},
      {"uniformizer slices equal least-run slices", slice_checks},
      {"SST to reversible 2FT", sst_checks},
      {"acceptor and T1 fixtures", fixture_checks},
  };
  int failed = 0, k = 0;
  for (const auto& c : all) {
    ++k;
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.fn();
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (v.ok() ? "PASS" : "FAIL") << " " << k << " " << c.name << " (" << v.checks << " checks, "
              << std::fixed << std::setprecision(1) << secs << "s)\n";
    for (const auto& n : v.notes) std::cout << "     note: " << n << "\n";
    for (const auto& p : v.problems) std::cout << "     " << p << "\n";
    if (!v.ok()) ++failed;
  }
  return failed;
}

#include "revxdt/uniformize.hpp"

#include <deque>
#include <functional>

#include "revxdt/compose.hpp"
#include "revxdt/oneway.hpp"

namespace revxdt {

BehaviorPair final_behavior(const Transducer& t) { return {{}, {t.final}}; }

namespace {

std::vector<std::pair<int, int>> moves(const Transducer& t, const Index& ix, int p, int a) {
  std::vector<std::pair<int, int>> v;  // (target, transition)
  if (a < 0) return v;
  for (auto [l, i] : ix.out(p, a)) v.push_back({t.transitions[i].to, i});
  return v;
}

// pairs (p0, qk) chaining suffix left-to-left runs through backward-to-forward turns on a
std::set<std::pair<int, int>> closure(const Transducer& t, const Index& ix, int a,
                                      const std::set<std::pair<int, int>>& ll) {
  std::set<std::pair<int, int>> cl = ll;
  std::deque<std::pair<int, int>> work(ll.begin(), ll.end());
  while (!work.empty()) {
    auto [p0, q] = work.front();
    work.pop_front();
    for (auto [p1, tr] : moves(t, ix, q, a)) {
      if (!t.forward(p1)) continue;
      for (auto it = ll.lower_bound({p1, -1}); it != ll.end() && it->first == p1; ++it)
        if (cl.insert({p0, it->second}).second) work.push_back({p0, it->second});
    }
  }
  return cl;
}

}  // namespace

BehaviorPair behavior_step(const Transducer& t, const Index& ix, const Letter& letter,
                           const BehaviorPair& b) {
  int a = ix.letter_id(letter);
  BehaviorPair r;
  if (a < 0) return r;
  auto cl = closure(t, ix, a, b.llbeh);
  // backward states at the right edge of a: where they end up after reading a
  // and, when they turn, after the suffix runs
  for (int p = 0; p < t.size(); ++p) {
    if (!t.forward(p)) continue;
    for (auto [x, tr] : moves(t, ix, p, a)) {
      if (!t.forward(x)) {
        r.llbeh.insert({p, x});
        continue;
      }
      if (b.predfin.count(x)) r.predfin.insert(p);
      for (auto it = cl.lower_bound({x, -1}); it != cl.end() && it->first == x; ++it) {
        for (auto [y, tr2] : moves(t, ix, it->second, a)) {
          if (!t.forward(y))
            r.llbeh.insert({p, y});
          else if (b.predfin.count(y))
            r.predfin.insert(p);
        }
      }
    }
  }
  return r;
}

BehaviorPair behavior_step(const Transducer& t, const Letter& a, const BehaviorPair& b) {
  Index ix(t);
  return behavior_step(t, ix, a, b);
}

std::string behavior_string(const Transducer& t, const BehaviorPair& b) {
  std::string s = "<";
  bool first = true;
  for (auto [p, q] : b.llbeh) {
    if (!first) s += ",";
    first = false;
    s += t.id(p) + ">" + t.id(q);
  }
  s += "|";
  first = true;
  for (int p : b.predfin) {
    if (!first) s += ",";
    first = false;
    s += t.id(p);
  }
  return s + ">";
}

Letter oracle_letter(const Transducer& t, const Letter& a, const BehaviorPair& b) {
  return "(" + a + "," + behavior_string(t, b) + ")";
}

RightOracle build_right_oracle(const Transducer& t) {
  Index ix(t);
  RightOracle ro;
  const BehaviorPair base = final_behavior(t);

  std::map<BehaviorPair, int> index;
  std::vector<BehaviorPair> behaviors;
  auto intern = [&](const BehaviorPair& b) {
    auto [it, fresh] = index.emplace(b, static_cast<int>(behaviors.size()));
    if (fresh) behaviors.push_back(b);
    return it->second;
  };
  intern(behavior_step(t, ix, kEnd, base));
  // edges (source behaviour, letter, target behaviour)
  std::vector<std::tuple<int, Letter, int>> edges;
  for (size_t k = 0; k < behaviors.size(); ++k) {
    for (const auto& a : t.input_alphabet) {
      int c = intern(behavior_step(t, ix, a, behaviors[k]));
      edges.emplace_back(c, a, static_cast<int>(k));
    }
  }

  Builder b("oracle(" + t.name + ")");
  int init = b.state("#init");
  std::vector<int> sid;
  for (const auto& beh : behaviors) sid.push_back(b.state(behavior_string(t, beh)));
  int fin = b.state("#fin");
  b.initial(init);
  b.final(fin);
  for (const auto& a : t.input_alphabet) b.input_letter(a);

  auto emit = [&](int from, const Letter& a, int to, const BehaviorPair& target) {
    Letter out = oracle_letter(t, a, target);
    ro.letters.emplace(out, std::make_pair(a, target));
    b.output_letter(out);
    b.transition(from, a, to, {out});
  };
  for (size_t k = 0; k < behaviors.size(); ++k) {
    auto before = behavior_step(t, ix, kBegin, behaviors[k]);
    if (before.predfin.count(t.initial)) emit(init, kBegin, sid[k], behaviors[k]);
  }
  for (const auto& [c, a, k] : edges) emit(sid[c], a, sid[k], behaviors[k]);
  emit(sid[0], kEnd, fin, base);
  ro.machine = b.build();
  return ro;
}

std::string slice_id(const Transducer& t, const Slice& s) {
  std::string r = "[";
  for (size_t i = 0; i < s.size(); ++i) r += (i ? " " : "") + t.id(s[i]);
  return r + "]";
}

Letter slice_letter(const Transducer& t, const std::vector<int>& transitions) {
  std::string r;
  for (int i : transitions) {
    const auto& tr = t.transitions[i];
    r += "(" + t.id(tr.from) + "," + tr.letter + "," + t.id(tr.to) + ")";
  }
  return r.empty() ? "()" : r;
}

namespace {

// Interleaves prev (boundary before a) and next (boundary after a) into one
// stretch of run, starting at prev[0] and ending at next's last element.
bool stitch(const Transducer& t, const Index& ix, int a, const Slice& prev, const Slice& next,
            std::vector<int>& used) {
  // cur: which side (0 prev, 1 next) and index; i/j: next unconsumed on each side
  std::function<bool(int, size_t, size_t, size_t)> go = [&](int side, size_t k, size_t i,
                                                            size_t j) -> bool {
    int s = side == 0 ? prev[k] : next[k];
    bool fwd = t.forward(s);
    if (side == 0 && !fwd) {
      // left excursion, comes back as the next prev element
      return i < prev.size() && go(0, i, i + 1, j);
    }
    if (side == 1 && fwd) {
      if (k + 1 == next.size()) return i == prev.size() && j == next.size();
      // right excursion, comes back as the next next element
      return j < next.size() && go(1, j, i, j + 1);
    }
    // a transition reading a: forward target lands after a, backward before it
    for (auto [x, tr] : moves(t, ix, s, a)) {
      if (t.forward(x)) {
        if (j < next.size() && next[j] == x) {
          used.push_back(tr);
          if (go(1, j, i, j + 1)) return true;
          used.pop_back();
        }
      } else if (i < prev.size() && prev[i] == x) {
        used.push_back(tr);
        if (go(0, i, i + 1, j)) return true;
        used.pop_back();
      }
    }
    return false;
  };
  used.clear();
  if (prev.empty() || next.empty()) return false;
  return go(0, 0, 1, 0);
}

}  // namespace

std::optional<SliceStep> slice_update(const Transducer& t, const Index& ix, const Slice& prev,
                                      const Letter& letter, const BehaviorPair& b) {
  int a = ix.letter_id(letter);
  if (a < 0 || b.predfin.empty()) return std::nullopt;
  const int n = t.size();
  Slice cand;
  std::vector<char> in_use(n, 0);
  std::vector<int> used;
  std::optional<SliceStep> found;

  // candidates of a fixed odd length in lexicographic order: forward and
  // backward states alternate, each forward-backward pair a suffix left-to-left run
  std::function<bool(int)> extend = [&](int len) -> bool {
    int k = static_cast<int>(cand.size());
    if (k == len) {
      if (!b.predfin.count(cand.back())) return false;
      if (!stitch(t, ix, a, prev, cand, used)) return false;
      found = SliceStep{cand, used};
      return true;
    }
    bool want_fwd = k % 2 == 0;
    for (int s = 0; s < n; ++s) {
      if (in_use[s] || t.forward(s) != want_fwd) continue;
      if (!want_fwd && !b.llbeh.count({cand.back(), s})) continue;
      in_use[s] = 1;
      cand.push_back(s);
      bool ok = extend(len);
      cand.pop_back();
      in_use[s] = 0;
      if (ok) return true;
    }
    return false;
  };
  for (int len = 1; len <= n; len += 2)
    if (extend(len)) break;
  return found;
}

Uniformizer build_uniformizer(const Transducer& t, const RightOracle& oracle) {
  Index ix(t);
  Uniformizer u;
  Builder b("uniformizer(" + t.name + ")");
  for (const auto& x : oracle.machine.output_alphabet) b.input_letter(x);
  int init = b.state("#init");
  b.initial(init);

  std::map<Slice, int> ids;
  std::deque<Slice> work;
  auto state_of = [&](const Slice& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    int id = b.state(slice_id(t, s));
    ids.emplace(s, id);
    work.push_back(s);
    return id;
  };
  const Slice start{t.initial};
  b.transition(init, kBegin, state_of(start));
  while (!work.empty()) {
    Slice s = work.front();
    work.pop_front();
    int src = ids.at(s);
    for (const auto& [letter, info] : oracle.letters) {
      const auto& [a, beh] = info;
      // the left endmarker is only read at the very start
      if (a == kBegin && s != start) continue;
      auto st = slice_update(t, ix, s, a, beh);
      if (!st) continue;
      Letter out = slice_letter(t, st->transitions);
      u.slice_letters.emplace(out, st->transitions);
      b.output_letter(out);
      b.transition(src, letter, state_of(st->next), {out});
    }
  }
  int fin = b.state("#fin");
  b.final(fin);
  auto it = ids.find(Slice{t.final});
  if (it != ids.end()) b.transition(it->second, kEnd, fin);
  u.machine = b.build();
  return u;
}

Uniformizer build_uniformizer(const Transducer& t) { return build_uniformizer(t, build_right_oracle(t)); }

Transducer build_follower(const Transducer& t, const std::map<Letter, std::vector<int>>& slice_letters) {
  Transducer f;
  f.name = "follower(" + t.name + ")";
  f.states = t.states;
  f.output_alphabet = t.output_alphabet;
  const int init = f.size();
  f.states.push_back({"#init", Polarity::Forward});
  const int fin = f.size();
  f.states.push_back({"#fin", Polarity::Forward});
  f.initial = init;
  f.final = fin;
  f.transitions.push_back({init, kBegin, t.initial, {}, {}});
  for (const auto& [letter, trs] : slice_letters) {
    f.input_alphabet.push_back(letter);
    for (int i : trs) {
      const auto& tr = t.transitions[i];
      f.transitions.push_back({tr.from, letter, tr.to, tr.output, {}});
    }
  }
  f.transitions.push_back({t.final, kEnd, fin, {}, {}});
  return f;
}

Transducer uniformize(const Transducer& t, const UniformizeOptions& opt) {
  auto oracle = build_right_oracle(t);
  auto unif = build_uniformizer(t, oracle);
  auto follower = build_follower(t, unif.slice_letters);
  PipelineOptions po;
  po.reachable_only = true;
  po.max_states = opt.max_states;
  auto dr = renumber(codet1ft_to_reversible(oracle.machine, po), "d");
  auto ur = renumber(det1ft_to_reversible(unif.machine, po), "u");
  ComposeOptions co;
  co.reachable_only = true;
  co.max_states = opt.max_states;
  auto tail = renumber(compose_reversible(ur, follower, co), "v");
  auto r = renumber(compose_reversible(dr, tail, co), "s");
  r.name = "uniformize(" + t.name + ")";
  return r;
}

std::optional<std::vector<Slice>> uniformizer_slices(const Transducer& t, const Word& u) {
  Index ix(t);
  Word w = wrap_input(u);
  // behaviour of every suffix w[i+1..]
  std::vector<BehaviorPair> after(w.size());
  BehaviorPair cur = final_behavior(t);
  for (size_t i = w.size(); i-- > 0;) {
    after[i] = cur;
    cur = behavior_step(t, ix, w[i], cur);
  }
  if (!cur.predfin.count(t.initial)) return std::nullopt;
  std::vector<Slice> out{Slice{t.initial}};
  for (size_t i = 0; i < w.size(); ++i) {
    auto st = slice_update(t, ix, out.back(), w[i], after[i]);
    if (!st) return std::nullopt;
    out.push_back(st->next);
  }
  return out;
}

}  // namespace revxdt

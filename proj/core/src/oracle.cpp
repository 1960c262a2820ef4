#include "revxdt/oracle.hpp"

#include <algorithm>
#include <unordered_set>

namespace revxdt {

size_t Relation::size() const {
  size_t n = 0;
  for (const auto& [u, vs] : pairs) n += vs.size();
  return n;
}

bool Relation::contains(const Word& u, const Word& v) const {
  auto it = pairs.find(u);
  return it != pairs.end() && it->second.count(v);
}

std::vector<Word> all_words(const std::vector<Letter>& alphabet, int max_len) {
  std::vector<Word> out{Word{}};
  size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t level_end = out.size();
    for (size_t i = level_begin; i < level_end; ++i)
      for (const auto& a : alphabet) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    level_begin = level_end;
  }
  return out;
}

namespace {

// Visits every simple accepting run; `emit` receives the path and the final config.
template <class Emit>
void dfs_runs(const Index& ix, const Word& u, int bound, Emit&& emit) {
  if (static_cast<int>(u.size()) > bound)
    throw Error("word-too-long", std::to_string(u.size()) + " > " + std::to_string(bound));
  const auto& t = ix.machine();
  Word w = wrap_input(u);
  auto enc = ix.encode(w);
  const int n = static_cast<int>(w.size());

  struct Frame {
    Config c;
    std::vector<std::pair<Config, int>> succ;
    size_t next = 0;
  };
  std::vector<Frame> stack;
  std::vector<RunStep> path;
  std::unordered_set<Config, ConfigHash> on_path;

  auto push = [&](Config c) {
    on_path.insert(c);
    stack.push_back({c, successors(ix, enc, c), 0});
  };
  push({t.initial, 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.c.state == t.final && f.c.pos == n && f.next == 0) {
      Run r;
      r.word = w;
      r.steps = path;
      r.last = f.c;
      emit(std::move(r));
    }
    if (f.next < f.succ.size()) {
      auto [c, tr] = f.succ[f.next++];
      if (on_path.count(c)) continue;
      path.push_back({f.c, tr});
      push(c);
    } else {
      on_path.erase(f.c);
      stack.pop_back();
      if (!path.empty()) path.pop_back();
    }
  }
}

}  // namespace

std::vector<Run> enumerate_accepting_runs(const Index& ix, const Word& u, int bound) {
  std::vector<Run> runs;
  dfs_runs(ix, u, bound, [&](Run r) { runs.push_back(std::move(r)); });
  return runs;
}

std::vector<Run> enumerate_accepting_runs(const Transducer& t, const Word& u, int bound) {
  Index ix(t);
  return enumerate_accepting_runs(ix, u, bound);
}

std::set<Word> outputs(const Index& ix, const Word& u, int bound) {
  std::set<Word> out;
  dfs_runs(ix, u, bound, [&](Run r) { out.insert(run_output(ix.machine(), r)); });
  return out;
}

Relation relation(const Transducer& t, int max_len) {
  Index ix(t);
  Relation r;
  r.max_len = max_len;
  for (const auto& u : all_words(t.input_alphabet, max_len)) {
    auto outs = outputs(ix, u, std::max(max_len, kDefaultWordBound));
    if (!outs.empty()) r.pairs.emplace(u, std::move(outs));
  }
  return r;
}

EquivResult check_equiv(const Transducer& a, const Transducer& b, int max_len) {
  std::set<Letter> ia(a.input_alphabet.begin(), a.input_alphabet.end());
  std::set<Letter> ib(b.input_alphabet.begin(), b.input_alphabet.end());
  if (ia != ib) throw Error("alphabet-mismatch", a.name + " vs " + b.name);
  Index xa(a), xb(b);
  EquivResult r;
  int bound = std::max(max_len, kDefaultWordBound);
  for (const auto& u : all_words(a.input_alphabet, max_len)) {
    auto la = outputs(xa, u, bound);
    auto lb = outputs(xb, u, bound);
    if (la != lb) {
      r.equal = false;
      r.word = u;
      r.left = std::move(la);
      r.right = std::move(lb);
      return r;
    }
  }
  return r;
}

UniformResult check_uniformizes(const Transducer& tu, const Transducer& t, int max_len) {
  Index xu(tu), xt(t);
  UniformResult r;
  int bound = std::max(max_len, kDefaultWordBound);
  for (const auto& u : all_words(t.input_alphabet, max_len)) {
    auto chosen = outputs(xu, u, bound);
    if (chosen.size() > 1) throw Error("tu-not-functional", format_word(u));
    auto allowed = outputs(xt, u, bound);
    std::string why;
    if (chosen.empty() != allowed.empty())
      why = "domain differs";
    else if (!chosen.empty() && !allowed.count(*chosen.begin()))
      why = "output not in relation";
    if (!why.empty()) {
      r.ok = false;
      r.reason = why;
      r.word = u;
      r.chosen = std::move(chosen);
      r.allowed = std::move(allowed);
      return r;
    }
  }
  return r;
}

int longrun(const Transducer& t, const Word& u, int p) {
  if (!t.one_way()) throw Error("not-one-way", t.name);
  Index ix(t);
  std::set<int> cur{p};
  int len = 0;
  for (const auto& a : u) {
    int id = ix.letter_id(a);
    std::set<int> next;
    if (id >= 0)
      for (int s : cur)
        for (auto [l, i] : ix.out(s, id)) next.insert(t.transitions[i].to);
    if (next.empty()) break;
    cur = std::move(next);
    ++len;
  }
  return len;
}

Slice slice(const Run& r, int boundary) {
  Slice s;
  for (const auto& c : r.configs())
    if (c.pos == boundary) s.push_back(c.state);
  return s;
}

std::vector<Slice> slices(const Run& r) {
  std::vector<Slice> out(r.word.size() + 1);
  for (const auto& c : r.configs()) out[c.pos].push_back(c.state);
  return out;
}

bool lex_less(const Slice& a, const Slice& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool sl_less(const std::vector<Slice>& a, const std::vector<Slice>& b) {
  for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (lex_less(a[i], b[i])) return true;
    if (lex_less(b[i], a[i])) return false;
  }
  return false;
}

Run minimal_run(const Transducer& t, const Word& u) {
  auto runs = enumerate_accepting_runs(t, u);
  if (runs.empty()) throw Error("word-not-accepted", format_word(u));
  size_t best = 0;
  auto best_sl = slices(runs[0]);
  for (size_t i = 1; i < runs.size(); ++i) {
    auto sl = slices(runs[i]);
    if (sl_less(sl, best_sl)) best = i, best_sl = std::move(sl);
  }
  return runs[best];
}

}  // namespace revxdt

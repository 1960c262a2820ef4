#include "revxdt/transducer.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

namespace revxdt {

int Transducer::find_state(std::string_view id) const {
  for (int i = 0; i < size(); ++i)
    if (states[i].id == id) return i;
  return -1;
}

bool Transducer::one_way() const {
  for (const auto& s : states)
    if (s.polarity == Polarity::Backward) return false;
  return true;
}

bool structurally_equal(const Transducer& a, const Transducer& b) {
  if (a.input_alphabet != b.input_alphabet || a.output_alphabet != b.output_alphabet) return false;
  if (a.size() != b.size() || a.transitions.size() != b.transitions.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    if (a.states[i].id != b.states[i].id || a.states[i].polarity != b.states[i].polarity)
      return false;
  if (a.initial != b.initial || a.final != b.final) return false;
  auto key = [](const Transducer& t) {
    std::multiset<std::tuple<std::string, Letter, std::string, Word>> s;
    for (const auto& tr : t.transitions) s.emplace(t.id(tr.from), tr.letter, t.id(tr.to), tr.output);
    return s;
  };
  return key(a) == key(b);
}

Builder::Builder(std::string name) { t_.name = std::move(name); }

int Builder::state(const std::string& id, Polarity p) {
  auto it = ids_.find(id);
  if (it != ids_.end()) {
    if (t_.states[it->second].polarity != p)
      throw Error("schema-violation", "state " + id + " declared with two polarities");
    return it->second;
  }
  int s = t_.size();
  t_.states.push_back({id, p});
  ids_.emplace(id, s);
  return s;
}

int Builder::find(const std::string& id) const {
  auto it = ids_.find(id);
  return it == ids_.end() ? -1 : it->second;
}

void Builder::input_letter(const Letter& a) {
  if (is_endmarker(a)) return;
  if (in_seen_.emplace(a, true).second) t_.input_alphabet.push_back(a);
}

void Builder::output_letter(const Letter& b) {
  if (out_seen_.emplace(b, true).second) t_.output_alphabet.push_back(b);
}

void Builder::transition(int from, const Letter& a, int to, Word output, std::string tag) {
  input_letter(a);
  for (const auto& b : output) output_letter(b);
  t_.transitions.push_back({from, a, to, std::move(output), std::move(tag)});
}

void Builder::transition(const std::string& from, const Letter& a, const std::string& to,
                         Word output) {
  int f = find(from), g = find(to);
  if (f < 0 || g < 0) throw Error("unknown-state-in-transition", from + " -> " + to);
  transition(f, a, g, std::move(output));
}

Transducer Builder::build() { return t_; }

Index::Index(const Transducer& t) : t_(&t) {
  auto intern = [&](const Letter& a) {
    auto [it, fresh] = letter_ids_.emplace(a, static_cast<int>(letters_.size()));
    if (fresh) letters_.push_back(a);
    return it->second;
  };
  intern(kBegin);
  intern(kEnd);
  for (const auto& a : t.input_alphabet) intern(a);
  out_.assign(t.size(), {});
  in_.assign(t.size(), {});
  for (int i = 0; i < static_cast<int>(t.transitions.size()); ++i) {
    const auto& tr = t.transitions[i];
    int a = intern(tr.letter);
    out_[tr.from].emplace_back(a, i);
    in_[tr.to].emplace_back(a, i);
  }
  for (auto& v : out_) std::sort(v.begin(), v.end());
  for (auto& v : in_) std::sort(v.begin(), v.end());
  for (const auto& v : out_)
    for (size_t k = 1; k < v.size(); ++k)
      if (v[k].first == v[k - 1].first &&
          t.transitions[v[k].second].to != t.transitions[v[k - 1].second].to)
        deterministic_ = false;
}

int Index::letter_id(const Letter& a) const {
  auto it = letter_ids_.find(a);
  return it == letter_ids_.end() ? -1 : it->second;
}

std::vector<int> Index::encode(const Word& w) const {
  std::vector<int> r;
  r.reserve(w.size());
  for (const auto& a : w) r.push_back(letter_id(a));
  return r;
}

namespace {

std::span<const std::pair<int, int>> range_of(const std::vector<std::pair<int, int>>& v, int a) {
  auto lo = std::lower_bound(v.begin(), v.end(), std::make_pair(a, -1));
  auto hi = lo;
  while (hi != v.end() && hi->first == a) ++hi;
  return {v.data() + (lo - v.begin()), static_cast<size_t>(hi - lo)};
}

}  // namespace

std::span<const std::pair<int, int>> Index::out(int s, int a) const { return range_of(out_[s], a); }

std::span<const std::pair<int, int>> Index::in(int s, int a) const { return range_of(in_[s], a); }

std::vector<int> Index::out_all(int s) const {
  std::vector<int> r;
  for (auto [a, i] : out_[s]) r.push_back(i);
  return r;
}

std::vector<int> Index::in_all(int s) const {
  std::vector<int> r;
  for (auto [a, i] : in_[s]) r.push_back(i);
  return r;
}

bool Run::is_simple() const {
  std::set<Config> seen;
  for (const auto& st : steps)
    if (!seen.insert(st.config).second) return false;
  return seen.insert(last).second;
}

std::vector<Config> Run::configs() const {
  std::vector<Config> r;
  for (const auto& st : steps) r.push_back(st.config);
  r.push_back(last);
  return r;
}

std::vector<int> Run::transitions() const {
  std::vector<int> r;
  for (const auto& st : steps) r.push_back(st.transition);
  return r;
}

Word run_output(const Transducer& t, const Run& r) {
  Word out;
  for (const auto& st : r.steps) {
    const auto& o = t.transitions[st.transition].output;
    out.insert(out.end(), o.begin(), o.end());
  }
  return out;
}

Word wrap_input(const Word& u) {
  Word w;
  w.reserve(u.size() + 2);
  w.push_back(kBegin);
  for (const auto& a : u) {
    if (is_endmarker(a)) throw Error("reserved-token-in-input", a);
    w.push_back(a);
  }
  w.push_back(kEnd);
  return w;
}

Word parse_word(std::string_view s) {
  Word w;
  bool spaced = std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  if (!spaced) {
    for (char c : s) w.emplace_back(1, c);
    return w;
  }
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) w.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) w.push_back(cur);
  return w;
}

std::string format_word(const Word& w) {
  bool chars = std::all_of(w.begin(), w.end(), [](const Letter& a) { return a.size() == 1; });
  std::string r;
  for (size_t i = 0; i < w.size(); ++i) {
    if (!chars && i) r += ' ';
    r += w[i];
  }
  return r;
}

std::vector<std::pair<Config, int>> successors(const Index& ix, const std::vector<int>& w,
                                               Config c) {
  std::vector<std::pair<Config, int>> r;
  const auto& t = ix.machine();
  const int n = static_cast<int>(w.size());
  const bool fwd = t.forward(c.state);
  if (fwd ? c.pos >= n : c.pos <= 0) return r;
  int a = fwd ? w[c.pos] : w[c.pos - 1];
  if (a < 0) return r;
  for (auto [l, i] : ix.out(c.state, a)) {
    const auto& tr = t.transitions[i];
    bool tf = t.forward(tr.to);
    int pos = c.pos;
    if (fwd && tf) pos += 1;
    if (!fwd && !tf) pos -= 1;
    r.push_back({{tr.to, pos}, i});
  }
  return r;
}

std::vector<std::pair<Config, int>> successors(const Transducer& t, const Word& w, Config c) {
  Index ix(t);
  return successors(ix, ix.encode(w), c);
}

std::vector<std::pair<Config, int>> predecessors(const Index& ix, const std::vector<int>& w,
                                                 Config c) {
  // invert the four movement rules: the source config is determined by the
  // source polarity and the target config
  std::vector<std::pair<Config, int>> r;
  const auto& t = ix.machine();
  const int n = static_cast<int>(w.size());
  const bool tf = t.forward(c.state);
  for (int sf = 0; sf < 2; ++sf) {
    bool src_fwd = sf == 1;
    int pos = c.pos;
    if (src_fwd && tf) pos -= 1;
    if (!src_fwd && !tf) pos += 1;
    if (pos < 0 || pos > n) continue;
    if (src_fwd ? pos >= n : pos <= 0) continue;
    int a = src_fwd ? w[pos] : w[pos - 1];
    if (a < 0) continue;
    for (auto [l, i] : ix.in(c.state, a)) {
      const auto& tr = t.transitions[i];
      if (t.forward(tr.from) != src_fwd) continue;
      r.push_back({{tr.from, pos}, i});
    }
  }
  return r;
}

Outcome run_deterministic(const Index& ix, const Word& u) {
  if (!ix.deterministic()) throw Error("not-deterministic", ix.machine().name);
  const auto& t = ix.machine();
  Outcome o;
  o.run.word = wrap_input(u);
  auto w = ix.encode(o.run.word);
  const int n = static_cast<int>(w.size());
  std::unordered_set<Config, ConfigHash> seen;
  Config c{t.initial, 0};
  while (true) {
    if (c.state == t.final && c.pos == n) {
      o.kind = Outcome::Kind::Accepted;
      break;
    }
    if (!seen.insert(c).second) {
      o.kind = Outcome::Kind::Diverges;
      break;
    }
    auto next = successors(ix, w, c);
    if (next.empty()) {
      o.kind = Outcome::Kind::Rejected;
      break;
    }
    o.run.steps.push_back({c, next.front().second});
    c = next.front().first;
  }
  o.run.last = c;
  if (o.kind == Outcome::Kind::Accepted) o.output = run_output(t, o.run);
  return o;
}

Outcome run_deterministic(const Transducer& t, const Word& u) {
  Index ix(t);
  return run_deterministic(ix, u);
}

std::string describe_transition(const Transducer& t, int i) {
  const auto& tr = t.transitions[i];
  return "(" + t.id(tr.from) + ", " + tr.letter + ", " + t.id(tr.to) + ")";
}

PropertyReport check_properties(const Transducer& t) {
  PropertyReport r;
  r.one_way = t.one_way();
  // first transition seen per (from, letter) and per (letter, to)
  std::map<std::pair<int, Letter>, std::vector<int>> by_src, by_dst;
  for (int i = 0; i < static_cast<int>(t.transitions.size()); ++i) {
    const auto& tr = t.transitions[i];
    by_src[{tr.from, tr.letter}].push_back(i);
    by_dst[{tr.to, tr.letter}].push_back(i);
  }
  std::map<Letter, std::vector<std::pair<int, std::vector<int>>>> branching;
  for (const auto& [key, ids] : by_src) {
    std::vector<int> distinct;  // one transition per distinct target
    std::set<int> targets;
    for (int i : ids)
      if (targets.insert(t.transitions[i].to).second) distinct.push_back(i);
    if (distinct.size() > 1) {
      if (r.deterministic) r.det_witness = {distinct[0], distinct[1]};
      r.deterministic = false;
      branching[key.second].push_back({key.first, distinct});
    }
  }
  for (const auto& [key, ids] : by_dst) {
    std::set<int> sources;
    int first = -1;
    for (int i : ids) {
      if (sources.insert(t.transitions[i].from).second && sources.size() == 2 &&
          r.codeterministic) {
        r.codet_witness = {first, i};
        r.codeterministic = false;
      }
      if (first < 0) first = i;
    }
  }
  for (const auto& [a, list] : branching) {
    for (const auto& [s, ids] : list) r.branching.push_back({a, s});
    if (!r.weakly_branching) continue;
    if (list.size() > 1) {
      r.weakly_branching = false;
      r.wb_witness = {list[0].second[0], list[1].second[0]};
    } else if (list[0].second.size() > 2) {
      r.weakly_branching = false;
      r.wb_witness = {list[0].second[0], list[0].second[2]};
    }
  }
  r.reversible = r.deterministic && r.codeterministic;
  return r;
}

Diagnostics validate(const Transducer& t) {
  Diagnostics d;
  std::set<std::string> ids;
  for (const auto& s : t.states)
    if (!ids.insert(s.id).second) d.errors.push_back("duplicate-state-id: " + s.id);
  auto valid_state = [&](int s) { return s >= 0 && s < t.size(); };
  if (!valid_state(t.initial) || !valid_state(t.final)) {
    d.errors.push_back("unknown-state-in-transition: initial or final state missing");
    return d;
  }
  if (!t.forward(t.initial)) d.errors.push_back("polarity: initial state must be forward");
  if (!t.forward(t.final)) d.errors.push_back("polarity: final state must be forward");
  std::set<Letter> in(t.input_alphabet.begin(), t.input_alphabet.end());
  std::set<Letter> out(t.output_alphabet.begin(), t.output_alphabet.end());
  for (const auto& a : t.input_alphabet)
    if (is_endmarker(a)) d.errors.push_back("reserved-letter-in-alphabet: " + a);
  std::set<std::tuple<int, Letter, int>> seen;
  for (int i = 0; i < static_cast<int>(t.transitions.size()); ++i) {
    const auto& tr = t.transitions[i];
    if (!valid_state(tr.from) || !valid_state(tr.to)) {
      d.errors.push_back("unknown-state-in-transition: #" + std::to_string(i));
      continue;
    }
    if (!is_endmarker(tr.letter) && !in.count(tr.letter))
      d.errors.push_back("letter-not-in-alphabet: " + tr.letter + " in " +
                         describe_transition(t, i));
    for (const auto& b : tr.output)
      if (!out.count(b))
        d.errors.push_back("letter-not-in-alphabet: output " + b + " in " +
                           describe_transition(t, i));
    if (!seen.emplace(tr.from, tr.letter, tr.to).second)
      d.errors.push_back("duplicate-transition: " + describe_transition(t, i));
    if (tr.letter == kBegin && t.forward(tr.from) && tr.from != t.initial)
      d.warnings.push_back("convention: forward state " + t.id(tr.from) + " reads the left endmarker");
    if (tr.letter == kEnd && t.forward(tr.from) && t.forward(tr.to) && tr.to != t.final)
      d.warnings.push_back("convention: " + describe_transition(t, i) +
                           " leaves the right endmarker into a non-final state");
  }
  if (t.initial == t.final) d.warnings.push_back("convention: initial state equals final state");
  return d;
}

Transducer trim(const Transducer& t) {
  const int n = t.size();
  std::vector<std::vector<int>> fwd(n), bwd(n);
  for (const auto& tr : t.transitions) {
    fwd[tr.from].push_back(tr.to);
    bwd[tr.to].push_back(tr.from);
  }
  auto reach = [n](int start, const std::vector<std::vector<int>>& g) {
    std::vector<char> seen(n, 0);
    std::deque<int> q{start};
    seen[start] = 1;
    while (!q.empty()) {
      int s = q.front();
      q.pop_front();
      for (int x : g[s])
        if (!seen[x]) seen[x] = 1, q.push_back(x);
    }
    return seen;
  };
  auto from_init = reach(t.initial, fwd);
  auto to_final = reach(t.final, bwd);
  std::vector<int> remap(n, -1);
  Transducer r;
  r.name = t.name;
  r.input_alphabet = t.input_alphabet;
  r.output_alphabet = t.output_alphabet;
  for (int s = 0; s < n; ++s) {
    if ((from_init[s] && to_final[s]) || s == t.initial || s == t.final) {
      remap[s] = r.size();
      r.states.push_back(t.states[s]);
    }
  }
  r.initial = remap[t.initial];
  r.final = remap[t.final];
  for (const auto& tr : t.transitions) {
    if (remap[tr.from] < 0 || remap[tr.to] < 0) continue;
    if (!(from_init[tr.from] && to_final[tr.to])) continue;
    auto c = tr;
    c.from = remap[tr.from];
    c.to = remap[tr.to];
    r.transitions.push_back(std::move(c));
  }
  return r;
}

Transducer renumber(const Transducer& t, const std::string& prefix) {
  Transducer r = t;
  for (int i = 0; i < r.size(); ++i) r.states[i].id = prefix + std::to_string(i);
  return r;
}

}  // namespace revxdt

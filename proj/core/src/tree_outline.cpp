#include "revxdt/tree_outline.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace revxdt {

namespace {

constexpr Mark L = Mark::Live;
constexpr Mark D = Mark::Dead;

const char* mark_char(Mark m) { return m == Mark::Live ? "^" : "_"; }

}  // namespace

std::string marked_pair_id(const Transducer& t, const MarkedPair& s) {
  return std::string("(") + mark_char(s.upper_mark) + t.id(s.upper) + "," +
         mark_char(s.lower_mark) + t.id(s.lower) + ")";
}

size_t outline_state_count(size_t m) { return 4 * m * m - 2 * m; }

void check_outline_preconditions(const Transducer& t) {
  auto rep = check_properties(t);
  if (!rep.one_way) throw Error("precondition-violation", "one_way: " + t.name + " has backward states");
  if (!rep.codeterministic)
    throw Error("precondition-violation",
                "codeterministic: " + describe_transition(t, rep.codet_witness->first) + " vs " +
                    describe_transition(t, rep.codet_witness->second));
  if (!rep.weakly_branching)
    throw Error("precondition-violation",
                "weakly_branching: " + describe_transition(t, rep.wb_witness->first) + " vs " +
                    describe_transition(t, rep.wb_witness->second));
  // Two branches that both read the right endmarker can never be told apart,
  // so the outline would stall next to the final pair.
  for (int i = 0; i < static_cast<int>(t.transitions.size()); ++i)
    if (t.transitions[i].letter == kEnd && t.transitions[i].to != t.final)
      throw Error("precondition-violation", "endmarker convention: " + describe_transition(t, i) +
                                                " reads the right endmarker into a non-final state");
}

Transducer tree_outline(const Transducer& t) {
  check_outline_preconditions(t);
  const int m = t.size();
  Index ix(t);

  Transducer r;
  r.name = "outline(" + t.name + ")";
  r.input_alphabet = t.input_alphabet;
  r.output_alphabet = t.output_alphabet;
  std::map<MarkedPair, int> ids;
  // upper-major order over (mark, state) x (mark, state)
  for (Mark um : {L, D})
    for (int p = 0; p < m; ++p)
      for (Mark lm : {L, D})
        for (int q = 0; q < m; ++q) {
          MarkedPair s{um, p, lm, q};
          if (!s.valid()) continue;
          ids[s] = r.size();
          r.states.push_back({marked_pair_id(t, s), s.forward() ? Polarity::Forward : Polarity::Backward});
        }
  r.initial = ids.at({L, t.initial, D, t.initial});
  r.final = ids.at({L, t.final, D, t.final});

  auto add = [&](const char* tag, MarkedPair src, const Letter& a, MarkedPair dst, Word out = {}) {
    if (!src.valid() || !dst.valid()) return;
    r.transitions.push_back({ids.at(src), a, ids.at(dst), std::move(out), tag});
  };

  // successors sorted by declaration order, with the transition used
  auto succ = [&](int p, int a) {
    std::vector<std::pair<int, int>> v;
    for (auto [l, i] : ix.out(p, a)) v.push_back({t.transitions[i].to, i});
    std::sort(v.begin(), v.end());
    return v;
  };

  for (int a = 0; a < ix.num_letters(); ++a) {
    const Letter& la = ix.letter(a);
    for (int p = 0; p < m; ++p) {
      auto sp = succ(p, a);
      for (int q = 0; q < m; ++q) {
        auto sq = succ(q, a);
        if (sp.empty()) {
          add("fua", {L, p, D, q}, la, {D, p, D, q});
          add("fuw", {D, p, L, q}, la, {L, p, L, q});
        } else if (sq.empty()) {
          add("flw", {L, p, D, q}, la, {L, p, L, q});
          add("fla", {D, p, L, q}, la, {D, p, D, q});
        } else {
          int pmin = sp.front().first, pmax = sp.back().first;
          int qmin = sq.front().first, qmax = sq.back().first;
          Word out;
          if (p == q && sp.size() == 1) out = t.transitions[sp.front().second].output;
          add("fualw", {L, p, D, q}, la, {L, pmax, D, qmin}, std::move(out));
          add("fuwla", {D, p, L, q}, la, {D, pmin, L, qmax});
          add("bulw", {D, pmin, D, qmin}, la, {D, p, D, q});
          add("bula", {L, pmax, L, qmax}, la, {L, p, L, q});
        }
        // the branching rules only need the branching side to have successors
        if (sp.size() == 2) {
          int pmin = sp.front().first, pmax = sp.back().first;
          Word out;
          if (q == pmin) out = t.transitions[sp.front().second].output;
          add("buw", {D, pmax, D, q}, la, {L, pmin, D, q}, std::move(out));
          add("bua", {L, pmin, L, q}, la, {D, pmax, L, q});
        }
        if (sq.size() == 2) {
          int qmin = sq.front().first, qmax = sq.back().first;
          Word out;
          if (p == qmax) out = t.transitions[sq.back().second].output;
          add("bla", {L, p, L, qmin}, la, {L, p, D, qmax}, std::move(out));
          add("blw", {D, p, D, qmax}, la, {D, p, L, qmin});
        }
      }
    }
  }

  auto rep = check_properties(r);
  if (!rep.deterministic)
    throw Error("outline-not-reversible",
                "determinism: " + r.transitions[rep.det_witness->first].tag + " vs " +
                    r.transitions[rep.det_witness->second].tag);
  if (!rep.codeterministic)
    throw Error("outline-not-reversible",
                "co-determinism: " + r.transitions[rep.codet_witness->first].tag + " vs " +
                    r.transitions[rep.codet_witness->second].tag);
  return r;
}

OutlineStepper::OutlineStepper(const Transducer& t)
    : t_(t), ix_(t), m_(t.size()), nl_(ix_.num_letters()) {
  check_outline_preconditions(t);
  succ_.assign(static_cast<size_t>(m_) * nl_, {});
  pred_.assign(static_cast<size_t>(m_) * nl_, {});
  for (int i = 0; i < static_cast<int>(t.transitions.size()); ++i) {
    const auto& tr = t.transitions[i];
    int a = ix_.letter_id(tr.letter);
    auto& s = succ_[static_cast<size_t>(tr.from) * nl_ + a];
    if (s.min < 0 || tr.to < s.min) s.min = tr.to, s.min_tr = i;
    if (s.max < 0 || tr.to > s.max) s.max = tr.to, s.max_tr = i;
    pred_[static_cast<size_t>(tr.to) * nl_ + a] = {tr.from, i};
  }
}

int OutlineStepper::encode(const MarkedPair& s) const {
  int um = s.upper_mark == L ? 0 : 1, lm = s.lower_mark == L ? 0 : 1;
  return ((um * m_ + s.upper) * 2 + lm) * m_ + s.lower;
}

MarkedPair OutlineStepper::decode(int s) const {
  MarkedPair r;
  r.lower = s % m_;
  s /= m_;
  r.lower_mark = s % 2 == 0 ? L : D;
  s /= 2;
  r.upper = s % m_;
  r.upper_mark = s / m_ == 0 ? L : D;
  return r;
}

bool OutlineStepper::valid(int s) const {
  return s >= 0 && s < num_states() && decode(s).valid();
}

std::string OutlineStepper::state_id(int s) const { return marked_pair_id(t_, decode(s)); }

int OutlineStepper::initial() const { return encode({L, t_.initial, D, t_.initial}); }
int OutlineStepper::final() const { return encode({L, t_.final, D, t_.final}); }

std::optional<Step> OutlineStepper::step(int s, const Letter& a) const {
  auto r = step_tagged(s, a);
  if (!r) return std::nullopt;
  return std::move(r->first);
}

std::optional<std::pair<Step, const char*>> OutlineStepper::step_tagged(int s, const Letter& letter) const {
  int a = ix_.letter_id(letter);
  if (a < 0) return std::nullopt;
  MarkedPair st = decode(s);
  const int x = st.upper, y = st.lower;
  auto emit = [&](const char* tag, MarkedPair dst,
                  Word out = {}) -> std::optional<std::pair<Step, const char*>> {
    if (!dst.valid()) return std::nullopt;
    return std::make_pair(Step{encode(dst), std::move(out)}, tag);
  };
  auto output = [&](int tr) { return t_.transitions[tr].output; };
  auto branches = [&](int p) { const auto& s2 = succ(p, a); return s2.min >= 0 && s2.min != s2.max; };

  if (st.upper_mark == L && st.lower_mark == D) {
    const auto& sp = succ(x, a);
    const auto& sq = succ(y, a);
    if (sp.min < 0) return emit("fua", {D, x, D, y});
    if (sq.min < 0) return emit("flw", {L, x, L, y});
    Word out;
    if (x == y && sp.min == sp.max) out = output(sp.min_tr);
    return emit("fualw", {L, sp.max, D, sq.min}, std::move(out));
  }
  if (st.upper_mark == D && st.lower_mark == L) {
    const auto& sp = succ(x, a);
    const auto& sq = succ(y, a);
    if (sp.min < 0) return emit("fuw", {L, x, L, y});
    if (sq.min < 0) return emit("fla", {D, x, D, y});
    return emit("fuwla", {D, sp.min, L, sq.max});
  }
  const auto& px = pred(x, a);
  const auto& py = pred(y, a);
  if (st.upper_mark == D) {
    if (px.from >= 0 && branches(px.from) && succ(px.from, a).max == x) {
      const auto& sp = succ(px.from, a);
      Word out;
      if (y == sp.min) out = output(sp.min_tr);
      return emit("buw", {L, sp.min, D, y}, std::move(out));
    }
    if (py.from >= 0 && branches(py.from) && succ(py.from, a).max == y)
      return emit("blw", {D, x, L, succ(py.from, a).min});
    if (px.from >= 0 && py.from >= 0 && succ(px.from, a).min == x && succ(py.from, a).min == y)
      return emit("bulw", {D, px.from, D, py.from});
    return std::nullopt;
  }
  if (px.from >= 0 && branches(px.from) && succ(px.from, a).min == x)
    return emit("bua", {D, succ(px.from, a).max, L, y});
  if (py.from >= 0 && branches(py.from) && succ(py.from, a).min == y) {
    const auto& sq = succ(py.from, a);
    Word out;
    if (x == sq.max) out = output(sq.max_tr);
    return emit("bla", {L, x, D, sq.max}, std::move(out));
  }
  if (px.from >= 0 && py.from >= 0 && succ(px.from, a).max == x && succ(py.from, a).max == y)
    return emit("bula", {L, px.from, L, py.from});
  return std::nullopt;
}

std::string run_tree_dot(const Transducer& t, const Word& u) {
  if (!t.one_way()) throw Error("not-one-way", t.name);
  Index ix(t);
  Word w = wrap_input(u);
  std::ostringstream os;
  os << "digraph runtree {\n  rankdir=LR;\n";
  int next = 0;
  // (node, state) frontier per depth
  std::vector<std::pair<int, int>> layer{{next++, t.initial}};
  os << "  n0 [label=\"" << t.id(t.initial) << "\"];\n";
  for (size_t i = 0; i < w.size() && !layer.empty(); ++i) {
    int a = ix.letter_id(w[i]);
    std::vector<std::pair<int, int>> nl;
    for (auto [node, s] : layer) {
      if (a < 0) continue;
      for (auto [l, tr] : ix.out(s, a)) {
        int to = t.transitions[tr].to;
        int id = next++;
        bool acc = i + 1 == w.size() && to == t.final;
        os << "  n" << id << " [label=\"" << t.id(to) << "\"" << (acc ? ", color=red" : "") << "];\n";
        os << "  n" << node << " -> n" << id << " [label=\"" << w[i] << "\"];\n";
        nl.push_back({id, to});
      }
    }
    layer = std::move(nl);
  }
  os << "}\n";
  return os.str();
}

}  // namespace revxdt

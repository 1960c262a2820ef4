#include "revxdt/compose.hpp"

#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace revxdt {

std::optional<Step> TransducerStepper::step(int s, const Letter& a) const {
  int id = ix_.letter_id(a);
  if (id < 0) return std::nullopt;
  auto r = ix_.out(s, id);
  if (r.empty()) return std::nullopt;
  const auto& tr = t_.transitions[r.front().second];
  return Step{tr.to, tr.output};
}

const char* to_string(RunKind k) {
  switch (k) {
    case RunKind::LeftToRight: return "left_to_right";
    case RunKind::LeftToLeft: return "left_to_left";
    case RunKind::RightToRight: return "right_to_right";
    case RunKind::RightToLeft: return "right_to_left";
  }
  return "?";
}

std::optional<EndToEndRun> simulate_fragment(const Stepper& m, const Word& v, int entry) {
  const int k = static_cast<int>(v.size());
  const bool from_left = m.forward(entry);
  int state = entry;
  int pos = from_left ? 0 : k;
  EndToEndRun r;
  r.entry = entry;
  r.word = v;
  std::unordered_set<Config, ConfigHash> seen;
  while (true) {
    bool fwd = m.forward(state);
    if (fwd && pos == k) {
      r.kind = from_left ? RunKind::LeftToRight : RunKind::RightToRight;
      break;
    }
    if (!fwd && pos == 0) {
      r.kind = from_left ? RunKind::LeftToLeft : RunKind::RightToLeft;
      break;
    }
    if (!seen.insert({state, pos}).second) return std::nullopt;
    auto st = m.step(state, fwd ? v[pos] : v[pos - 1]);
    if (!st) return std::nullopt;
    bool tf = m.forward(st->to);
    if (fwd && tf) ++pos;
    if (!fwd && !tf) --pos;
    state = st->to;
    r.production.insert(r.production.end(), st->output.begin(), st->output.end());
  }
  r.exit = state;
  return r;
}

std::vector<EndToEndRun> end_to_end_runs(const Transducer& t, const Word& v) {
  if (!check_properties(t).reversible) throw Error("not-reversible", t.name);
  TransducerStepper m(t);
  std::vector<EndToEndRun> out;
  for (int p = 0; p < t.size(); ++p)
    if (auto r = simulate_fragment(m, v, p)) out.push_back(std::move(*r));
  return out;
}

size_t default_max_states() {
  if (const char* env = std::getenv("REVXDT_MAX_STATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<size_t>(v);
  }
  return 1000000;
}

namespace {

// Production of a first-machine transition as seen by the second machine: the
// outermost transitions carry the second machine's own endmarkers.
Word fragment(const Transducer& t1, const Transition& tr) {
  Word v;
  if (tr.letter == kBegin && tr.from == t1.initial) v.push_back(kBegin);
  v.insert(v.end(), tr.output.begin(), tr.output.end());
  if (tr.letter == kEnd && tr.to == t1.final) v.push_back(kEnd);
  return v;
}

void check_alphabets(const Transducer& t1, const std::vector<Letter>& in2) {
  std::set<Letter> b(in2.begin(), in2.end());
  for (const auto& x : t1.output_alphabet)
    if (!b.count(x)) throw Error("alphabet-mismatch", "letter " + x + " of " + t1.name);
}

std::string pair_id(const std::string& q, const std::string& p) { return "(" + q + "," + p + ")"; }

class Product {
 public:
  Product(const Transducer& t1, const Stepper& t2, size_t max_states)
      : t1_(t1), t2_(t2), ix1_(t1), max_states_(max_states) {
    frag_.reserve(t1.transitions.size());
    for (const auto& tr : t1.transitions) frag_.push_back(fragment(t1, tr));
  }

  // rule shapes: entering from the left follows a transition out of q,
  // entering from the right rewinds the transition into q
  template <class Emit>
  void expand(int q, int p, Emit&& emit) {
    if (t2_.forward(p)) {
      for (int i : ix1_.out_all(q)) {
        auto r = run(i, p);
        if (!r) continue;
        const auto& tr = t1_.transitions[i];
        int q2 = r->kind == RunKind::LeftToRight ? tr.to : q;
        emit(tr.letter, q2, r->exit, r->production);
      }
    } else {
      for (int i : ix1_.in_all(q)) {
        auto r = run(i, p);
        if (!r) continue;
        const auto& tr = t1_.transitions[i];
        int q2 = r->kind == RunKind::RightToRight ? q : tr.from;
        emit(tr.letter, q2, r->exit, r->production);
      }
    }
  }

  Transducer full() {
    const int n1 = t1_.size(), n2 = t2_.num_states();
    if (static_cast<size_t>(n1) * static_cast<size_t>(n2) > max_states_)
      throw Error("state-budget-exceeded", std::to_string(static_cast<size_t>(n1) * n2));
    Transducer t;
    t.states.reserve(static_cast<size_t>(n1) * n2);
    for (int q = 0; q < n1; ++q)
      for (int p = 0; p < n2; ++p) t.states.push_back({pair_id(t1_.id(q), t2_.state_id(p)), polarity(q, p)});
    for (int q = 0; q < n1; ++q)
      for (int p = 0; p < n2; ++p)
        expand(q, p, [&](const Letter& a, int q2, int p2, const Word& out) {
          t.transitions.push_back({q * n2 + p, a, q2 * n2 + p2, out, {}});
        });
    t.initial = t1_.initial * n2 + t2_.initial();
    t.final = t1_.final * n2 + t2_.final();
    return finish(std::move(t));
  }

  Transducer reachable() {
    Transducer t;
    std::unordered_map<uint64_t, int> ids;
    std::deque<std::pair<int, int>> queue;
    auto id_of = [&](int q, int p) {
      uint64_t key = (static_cast<uint64_t>(q) << 32) | static_cast<uint32_t>(p);
      auto [it, fresh] = ids.emplace(key, t.size());
      if (fresh) {
        if (static_cast<size_t>(t.size()) >= max_states_)
          throw Error("state-budget-exceeded", std::to_string(max_states_));
        t.states.push_back({pair_id(t1_.id(q), t2_.state_id(p)), polarity(q, p)});
        queue.emplace_back(q, p);
      }
      return it->second;
    };
    t.initial = id_of(t1_.initial, t2_.initial());
    t.final = id_of(t1_.final, t2_.final());
    while (!queue.empty()) {
      auto [q, p] = queue.front();
      queue.pop_front();
      int src = id_of(q, p);
      expand(q, p, [&](const Letter& a, int q2, int p2, const Word& out) {
        int dst = id_of(q2, p2);
        t.transitions.push_back({src, a, dst, out, {}});
      });
    }
    return trim(finish(std::move(t)));
  }

 private:
  Polarity polarity(int q, int p) const {
    return t1_.forward(q) == t2_.forward(p) ? Polarity::Forward : Polarity::Backward;
  }

  const std::optional<EndToEndRun>& run(int i, int p) {
    uint64_t key = (static_cast<uint64_t>(i) << 32) | static_cast<uint32_t>(p);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, simulate_fragment(t2_, frag_[i], p)).first->second;
  }

  Transducer finish(Transducer t) const {
    t.name = "compose(" + t1_.name + ")";
    t.input_alphabet = t1_.input_alphabet;
    t.output_alphabet = t2_.output_alphabet();
    return t;
  }

  const Transducer& t1_;
  const Stepper& t2_;
  Index ix1_;
  size_t max_states_;
  std::vector<Word> frag_;
  std::unordered_map<uint64_t, std::optional<EndToEndRun>> cache_;
};

void require_reversible(const Transducer& t, const char* which) {
  auto rep = check_properties(t);
  if (!rep.reversible) throw Error("not-reversible", std::string(which) + " " + t.name);
}

}  // namespace

Transducer compose_reversible(const Transducer& t1, const Transducer& t2,
                              const ComposeOptions& opt) {
  require_reversible(t1, "first");
  require_reversible(t2, "second");
  check_alphabets(t1, t2.input_alphabet);
  TransducerStepper m(t2);
  Product prod(t1, m, opt.max_states);
  auto t = opt.reachable_only ? prod.reachable() : prod.full();
  t.name = t1.name + ";" + t2.name;
  return t;
}

Transducer compose_reversible(const Transducer& t1, const Stepper& t2, const ComposeOptions& opt) {
  require_reversible(t1, "first");
  check_alphabets(t1, t2.input_alphabet());
  Product prod(t1, t2, opt.max_states);
  return prod.reachable();
}

}  // namespace revxdt

#include "revxdt/oneway.hpp"

#include <algorithm>

#include "revxdt/tree_outline.hpp"

namespace revxdt {

Letter enriched_letter(const Letter& a, const std::string& q) { return "(" + a + "," + q + ")"; }

namespace {

std::vector<Letter> endmarked(const std::vector<Letter>& alphabet) {
  std::vector<Letter> v{kBegin};
  v.insert(v.end(), alphabet.begin(), alphabet.end());
  v.push_back(kEnd);
  return v;
}

void require_one_way(const Transducer& t) {
  if (!t.one_way()) throw Error("not-one-way", t.name);
}

}  // namespace

Transducer build_mult(const Transducer& t) {
  Builder b("mult(" + t.name + ")");
  int id = b.state("id");
  b.initial(id);
  b.final(id);
  for (const auto& a : t.input_alphabet) b.input_letter(a);
  for (const auto& a : endmarked(t.input_alphabet)) {
    for (const auto& s : t.states) b.output_letter(enriched_letter(a, s.id));
  }
  b.output_letter(kReset);
  for (const auto& a : endmarked(t.input_alphabet)) {
    Word block;
    for (const auto& s : t.states) block.push_back(enriched_letter(a, s.id));
    block.push_back(kReset);
    b.transition(id, a, id, block);
  }
  return b.build();
}

Transducer build_desync(const Transducer& t) {
  require_one_way(t);
  if (!check_properties(t).codeterministic) throw Error("not-codeterministic", t.name);
  const int n = t.size();
  Builder b("desync(" + t.name + ")");
  // (p,0) at 2p, (p,1) at 2p+1
  for (const auto& s : t.states) {
    b.state(s.id + "/0");
    b.state(s.id + "/1");
  }
  int init = b.state("init");
  int fin = b.state("fin");
  b.initial(init);
  b.final(fin);
  for (const auto& a : endmarked(t.input_alphabet))
    for (const auto& s : t.states) b.input_letter(enriched_letter(a, s.id));
  b.input_letter(kReset);
  for (const auto& x : t.output_alphabet) b.output_letter(x);

  for (const auto& a : endmarked(t.input_alphabet)) {
    for (int q = 0; q < n; ++q) {
      Letter aq = enriched_letter(a, t.id(q));
      for (int p = 0; p < n; ++p) {
        b.transition(2 * p, aq, 2 * p, {}, "wait");
        if (p != q) b.transition(2 * p + 1, aq, 2 * p + 1, {}, "done");
      }
      for (const auto& tr : t.transitions)
        if (tr.letter == a && tr.to == q) b.transition(2 * tr.from, aq, 2 * q + 1, tr.output, "take");
    }
  }
  for (int p = 0; p < n; ++p) b.transition(2 * p + 1, kReset, 2 * p, {}, "reset");
  b.transition(init, kBegin, 2 * t.initial, {}, "enter");
  b.transition(2 * t.final, kEnd, fin, {}, "leave");
  return b.build();
}

Transducer codet1ft_to_reversible(const Transducer& t, const PipelineOptions& opt) {
  require_one_way(t);
  if (!check_properties(t).codeterministic) throw Error("not-codeterministic", t.name);
  auto mult = build_mult(t);
  auto desync = build_desync(t);
  ComposeOptions co;
  co.max_states = opt.max_states;
  Transducer r;
  if (opt.reachable_only) {
    OutlineStepper outline(desync);
    r = compose_reversible(mult, outline, co);
  } else {
    auto outline = tree_outline(desync);
    r = compose_reversible(mult, outline, co);
  }
  r.name = "codet(" + t.name + ")";
  return r;
}

Transducer reverse_1ft(const Transducer& t) {
  require_one_way(t);
  Transducer r = t;
  r.name = "reverse(" + t.name + ")";
  std::swap(r.initial, r.final);
  for (auto& tr : r.transitions) {
    std::swap(tr.from, tr.to);
    if (tr.letter == kBegin)
      tr.letter = kEnd;
    else if (tr.letter == kEnd)
      tr.letter = kBegin;
    std::reverse(tr.output.begin(), tr.output.end());
  }
  return r;
}

namespace {

// also used with an empty alphabet for machines without output letters
Transducer mirror(const std::vector<Letter>& alphabet) {
  Builder b("mirror");
  int fw = b.state("fw");
  int bw = b.state("bw", Polarity::Backward);
  int out = b.state("out");
  b.initial(fw);
  b.final(out);
  for (const auto& x : alphabet) {
    b.input_letter(x);
    b.output_letter(x);
  }
  b.transition(fw, kBegin, fw);
  b.transition(fw, kEnd, bw);
  b.transition(bw, kBegin, out);
  b.transition(out, kEnd, out);
  for (const auto& x : alphabet) {
    b.transition(fw, x, fw);
    b.transition(bw, x, bw, {x});
    b.transition(out, x, out);
  }
  return b.build();
}

}  // namespace

Transducer build_mirror(const std::vector<Letter>& alphabet) {
  if (alphabet.empty()) throw Error("empty-alphabet", "mirror");
  return mirror(alphabet);
}

Transducer det1ft_to_reversible(const Transducer& t, const PipelineOptions& opt) {
  require_one_way(t);
  if (!check_properties(t).deterministic) throw Error("not-deterministic", t.name);
  auto core = codet1ft_to_reversible(reverse_1ft(t), opt);
  ComposeOptions co;
  co.max_states = opt.max_states;
  co.reachable_only = opt.reachable_only;
  auto inner = compose_reversible(core, mirror(t.output_alphabet), co);
  auto r = compose_reversible(mirror(t.input_alphabet), inner, co);
  r.name = "det(" + t.name + ")";
  return r;
}

size_t codet_pipeline_states(size_t n) { return outline_state_count(2 * n + 2); }
size_t det_pipeline_states(size_t n) { return 9 * codet_pipeline_states(n); }

}  // namespace revxdt

#include "revxdt/sst.hpp"

#include <set>

namespace revxdt {

Image parse_image(const std::string& s) {
  Image img;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '$' && i + 1 < s.size() && s[i + 1] == '{') {
      size_t close = s.find('}', i + 2);
      if (close == std::string::npos) throw Error("schema-violation", "unterminated variable in " + s);
      img.push_back({true, s.substr(i + 2, close - i - 2)});
      i = close;
    } else if (s[i] == '$' && i + 1 < s.size() && s[i + 1] == '$') {
      img.push_back({false, "$"});
      ++i;
    } else {
      img.push_back({false, std::string(1, s[i])});
    }
  }
  return img;
}

std::string format_image(const Image& img) {
  std::string s;
  for (const auto& x : img) {
    if (x.is_var)
      s += "${" + x.text + "}";
    else if (x.text == "$")
      s += "$$";
    else
      s += x.text;
  }
  return s;
}

Substitution identity_substitution(const std::vector<std::string>& vars) {
  Substitution s;
  for (const auto& x : vars) s[x] = {{true, x}};
  return s;
}

Substitution compose_substitutions(const Substitution& s2, const Substitution& s1) {
  std::set<std::string> k1, k2;
  for (const auto& [x, img] : s1) k1.insert(x);
  for (const auto& [x, img] : s2) k2.insert(x);
  if (k1 != k2) throw Error("variable-set-mismatch", "substitutions over different variables");
  Substitution r;
  for (const auto& [x, img] : s1) {
    Image out;
    for (const auto& sym : img) {
      if (!sym.is_var) {
        out.push_back(sym);
        continue;
      }
      auto it = s2.find(sym.text);
      if (it == s2.end()) throw Error("variable-set-mismatch", "unknown variable " + sym.text);
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
    r[x] = std::move(out);
  }
  return r;
}

Word erase_variables(const Image& img) {
  Word w;
  for (const auto& sym : img)
    if (!sym.is_var) w.push_back(sym.text);
  return w;
}

std::optional<std::string> copyless_violation(const Substitution& s) {
  std::map<std::string, std::string> used_in;
  for (const auto& [x, img] : s) {
    for (const auto& sym : img) {
      if (!sym.is_var) continue;
      auto [it, fresh] = used_in.emplace(sym.text, x);
      if (!fresh) {
        if (it->second == x) return sym.text + " occurs twice in the image of " + x;
        return sym.text + " occurs in the images of " + it->second + " and " + x;
      }
    }
  }
  return std::nullopt;
}

Substitution Sst::full_tau(int i) const {
  Substitution s = identity_substitution(variables);
  for (const auto& [x, img] : transitions[i].tau) s[x] = img;
  return s;
}

void validate_sst(const Sst& s) {
  auto fail = [&](const std::string& what) { throw Error("schema-violation", what); };
  std::set<std::string> vars(s.variables.begin(), s.variables.end());
  if (vars.size() != s.variables.size()) fail("duplicate variable");
  if (!vars.count(s.final_variable)) fail("final_variable " + s.final_variable + " is not a variable");
  std::set<std::string> ids(s.states.begin(), s.states.end());
  if (ids.size() != s.states.size()) fail("duplicate state id");
  const int n = static_cast<int>(s.states.size());
  if (s.initial < 0 || s.initial >= n || s.final < 0 || s.final >= n) fail("initial or final state missing");
  std::set<Letter> in(s.input_alphabet.begin(), s.input_alphabet.end());
  std::set<Letter> out(s.output_alphabet.begin(), s.output_alphabet.end());
  std::set<std::pair<int, Letter>> seen;
  for (const auto& tr : s.transitions) {
    if (tr.from < 0 || tr.from >= n || tr.to < 0 || tr.to >= n) fail("unknown state in transition");
    if (!is_endmarker(tr.letter) && !in.count(tr.letter)) fail("letter-not-in-alphabet: " + tr.letter);
    if (!seen.emplace(tr.from, tr.letter).second)
      throw Error("not-deterministic", s.states[tr.from] + " on " + tr.letter);
    for (const auto& [x, img] : tr.tau) {
      if (!vars.count(x)) fail("unknown variable " + x);
      for (const auto& sym : img) {
        if (sym.is_var && !vars.count(sym.text)) fail("unknown variable " + sym.text);
        if (!sym.is_var && !out.count(sym.text)) fail("letter-not-in-alphabet: output " + sym.text);
      }
    }
  }
}

CopylessReport check_copyless(const Sst& s) {
  CopylessReport r;
  const int m = static_cast<int>(s.transitions.size());
  for (int i = 0; i < m; ++i) {
    if (auto v = copyless_violation(s.full_tau(i))) {
      r.ok = false;
      r.witness = "transition " + s.states[s.transitions[i].from] + " -" + s.transitions[i].letter +
                  "-> " + s.states[s.transitions[i].to] + ": " + *v;
      return r;
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (s.transitions[i].to != s.transitions[j].from) continue;
      auto c = compose_substitutions(s.full_tau(i), s.full_tau(j));
      if (auto v = copyless_violation(c)) {
        r.ok = false;
        r.witness = "run through " + s.states[s.transitions[i].to] + ": " + *v;
        return r;
      }
    }
  return r;
}

std::optional<Word> eval_sst(const Sst& s, const Word& u) {
  std::map<std::pair<int, Letter>, int> delta;
  for (int i = 0; i < static_cast<int>(s.transitions.size()); ++i)
    delta[{s.transitions[i].from, s.transitions[i].letter}] = i;
  Substitution val = identity_substitution(s.variables);
  int q = s.initial;
  for (const auto& a : wrap_input(u)) {
    auto it = delta.find({q, a});
    if (it == delta.end()) return std::nullopt;
    val = compose_substitutions(val, s.full_tau(it->second));
    q = s.transitions[it->second].to;
  }
  if (q != s.final) return std::nullopt;
  return erase_variables(val.at(s.final_variable));
}

Letter substitution_letter(const Substitution& s) {
  std::string r = "{";
  bool first = true;
  for (const auto& [x, img] : s) {
    if (!first) r += ";";
    first = false;
    r += x + ":=" + format_image(img);
  }
  return r + "}";
}

Transducer strip_sst(const Sst& s) {
  validate_sst(s);
  Builder b("strip(" + s.name + ")");
  for (const auto& id : s.states) b.state(id);
  b.initial(s.initial);
  b.final(s.final);
  for (const auto& a : s.input_alphabet) b.input_letter(a);
  for (int i = 0; i < static_cast<int>(s.transitions.size()); ++i) {
    const auto& tr = s.transitions[i];
    Letter l = substitution_letter(s.full_tau(i));
    b.output_letter(l);
    b.transition(tr.from, tr.letter, tr.to, {l});
  }
  return b.build();
}

Transducer build_navigator(const Sst& s) {
  validate_sst(s);
  if (auto r = check_copyless(s); !r.ok) throw Error("not-copyless", r.witness);
  std::map<Letter, Substitution> sigmas;
  for (int i = 0; i < static_cast<int>(s.transitions.size()); ++i) {
    auto tau = s.full_tau(i);
    sigmas.emplace(substitution_letter(tau), std::move(tau));
  }

  Builder b("navigator(" + s.name + ")");
  int init = b.state("init");
  std::map<std::string, int> vin, vout;
  for (const auto& x : s.variables) {
    vin[x] = b.state(x + ".in", Polarity::Backward);
    vout[x] = b.state(x + ".out");
  }
  int fin = b.state("fin");
  b.initial(init);
  b.final(fin);
  for (const auto& [l, sigma] : sigmas) b.input_letter(l);
  for (const auto& x : s.output_alphabet) b.output_letter(x);

  b.transition(init, kBegin, init);
  b.transition(init, kEnd, vin.at(s.final_variable));
  b.transition(vout.at(s.final_variable), kEnd, fin);
  // variables start out empty
  for (const auto& x : s.variables) b.transition(vin[x], kBegin, vout[x]);

  for (const auto& [l, sigma] : sigmas) {
    b.transition(init, l, init);
    for (const auto& [x, img] : sigma) {
      // entering x: letters up to its first variable
      Word v;
      size_t k = 0;
      while (k < img.size() && !img[k].is_var) v.push_back(img[k++].text);
      if (k < img.size())
        b.transition(vin[x], l, vin[img[k].text], v);
      else
        b.transition(vin[x], l, vout[x], v);
      // leaving each variable of x's image: letters up to the next one
      for (; k < img.size(); ++k) {
        if (!img[k].is_var) continue;
        Word between;
        size_t j = k + 1;
        while (j < img.size() && !img[j].is_var) between.push_back(img[j++].text);
        if (j < img.size())
          b.transition(vout[img[k].text], l, vin[img[j].text], between);
        else
          b.transition(vout[img[k].text], l, vout[x], between);
      }
    }
  }
  return b.build();
}

Transducer sst_to_reversible(const Sst& s, const PipelineOptions& opt) {
  auto nav = build_navigator(s);
  auto d1 = det1ft_to_reversible(strip_sst(s), opt);
  ComposeOptions co;
  co.reachable_only = opt.reachable_only;
  co.max_states = opt.max_states;
  auto r = compose_reversible(d1, nav, co);
  r.name = "sst2rev(" + s.name + ")";
  return r;
}

size_t sst_pipeline_states(size_t n, size_t m) { return (2 * m + 2) * det_pipeline_states(n); }

}  // namespace revxdt

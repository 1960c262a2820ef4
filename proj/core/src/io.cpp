#include "revxdt/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace revxdt {

using nlohmann::json;

namespace {

[[noreturn]] void violation(const std::string& path, const std::string& what) {
  throw Error("schema-violation", path + ": " + what);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error("malformed-json", e.what());
  }
}

void expect_keys(const json& j, const std::string& path, const std::set<std::string>& required,
                 const std::set<std::string>& optional = {}) {
  if (!j.is_object()) violation(path, "expected an object");
  for (const auto& [k, v] : j.items())
    if (!required.count(k) && !optional.count(k)) violation(path + "." + k, "unknown key");
  for (const auto& k : required)
    if (!j.contains(k)) violation(path + "." + k, "missing");
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) violation(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> get_strings(const json& j, const std::string& path) {
  if (!j.is_array()) violation(path, "expected an array");
  std::vector<std::string> v;
  for (size_t i = 0; i < j.size(); ++i) v.push_back(get_string(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

int state_index(const std::map<std::string, int>& ids, const std::string& id, const std::string& path) {
  auto it = ids.find(id);
  if (it == ids.end()) violation(path, "unknown state " + id);
  return it->second;
}

}  // namespace

Transducer parse_transducer(const std::string& text) {
  json j = parse_json(text);
  expect_keys(j, "$", {"input_alphabet", "output_alphabet", "states", "initial", "final", "transitions"},
              {"name"});
  Transducer t;
  if (j.contains("name")) t.name = get_string(j["name"], "$.name");
  t.input_alphabet = get_strings(j["input_alphabet"], "$.input_alphabet");
  t.output_alphabet = get_strings(j["output_alphabet"], "$.output_alphabet");
  for (const auto& a : t.input_alphabet)
    if (a.empty() || is_endmarker(a)) violation("$.input_alphabet", "reserved or empty letter '" + a + "'");
  for (const auto& a : t.output_alphabet)
    if (a.empty()) violation("$.output_alphabet", "empty letter");

  if (!j["states"].is_array()) violation("$.states", "expected an array");
  std::map<std::string, int> ids;
  for (size_t i = 0; i < j["states"].size(); ++i) {
    std::string path = "$.states[" + std::to_string(i) + "]";
    const auto& s = j["states"][i];
    expect_keys(s, path, {"id", "polarity"});
    std::string id = get_string(s["id"], path + ".id");
    std::string pol = get_string(s["polarity"], path + ".polarity");
    if (pol != "+" && pol != "-") violation(path + ".polarity", "expected \"+\" or \"-\", got \"" + pol + "\"");
    if (!ids.emplace(id, t.size()).second) violation(path + ".id", "duplicate state id " + id);
    t.states.push_back({id, pol == "+" ? Polarity::Forward : Polarity::Backward});
  }
  t.initial = state_index(ids, get_string(j["initial"], "$.initial"), "$.initial");
  t.final = state_index(ids, get_string(j["final"], "$.final"), "$.final");

  if (!j["transitions"].is_array()) violation("$.transitions", "expected an array");
  for (size_t i = 0; i < j["transitions"].size(); ++i) {
    std::string path = "$.transitions[" + std::to_string(i) + "]";
    const auto& tr = j["transitions"][i];
    expect_keys(tr, path, {"from", "letter", "to", "output"}, {"tag"});
    Transition x;
    x.from = state_index(ids, get_string(tr["from"], path + ".from"), path + ".from");
    x.to = state_index(ids, get_string(tr["to"], path + ".to"), path + ".to");
    x.letter = get_string(tr["letter"], path + ".letter");
    x.output = get_strings(tr["output"], path + ".output");
    if (tr.contains("tag")) x.tag = get_string(tr["tag"], path + ".tag");
    t.transitions.push_back(std::move(x));
  }
  return t;
}

std::string serialize_transducer(const Transducer& t, bool with_tags) {
  json j;
  j["name"] = t.name;
  j["input_alphabet"] = t.input_alphabet;
  j["output_alphabet"] = t.output_alphabet;
  json states = json::array();
  for (const auto& s : t.states)
    states.push_back({{"id", s.id}, {"polarity", s.polarity == Polarity::Forward ? "+" : "-"}});
  j["states"] = std::move(states);
  j["initial"] = t.id(t.initial);
  j["final"] = t.id(t.final);
  json trs = json::array();
  for (const auto& tr : t.transitions) {
    json x = {{"from", t.id(tr.from)}, {"letter", tr.letter}, {"to", t.id(tr.to)}, {"output", tr.output}};
    if (with_tags && !tr.tag.empty()) x["tag"] = tr.tag;
    trs.push_back(std::move(x));
  }
  j["transitions"] = std::move(trs);
  return j.dump(2) + "\n";
}

Sst parse_sst(const std::string& text) {
  json j = parse_json(text);
  expect_keys(j, "$",
              {"input_alphabet", "output_alphabet", "states", "initial", "final", "transitions", "variables",
               "final_variable"},
              {"name"});
  Sst s;
  if (j.contains("name")) s.name = get_string(j["name"], "$.name");
  s.input_alphabet = get_strings(j["input_alphabet"], "$.input_alphabet");
  s.output_alphabet = get_strings(j["output_alphabet"], "$.output_alphabet");
  for (const auto& b : s.output_alphabet)
    if (b.size() != 1) violation("$.output_alphabet", "SST output letters are single characters, got '" + b + "'");
  s.states = get_strings(j["states"], "$.states");
  std::map<std::string, int> ids;
  for (size_t i = 0; i < s.states.size(); ++i)
    if (!ids.emplace(s.states[i], static_cast<int>(i)).second)
      violation("$.states[" + std::to_string(i) + "]", "duplicate state id " + s.states[i]);
  s.initial = state_index(ids, get_string(j["initial"], "$.initial"), "$.initial");
  s.final = state_index(ids, get_string(j["final"], "$.final"), "$.final");
  s.variables = get_strings(j["variables"], "$.variables");
  s.final_variable = get_string(j["final_variable"], "$.final_variable");
  if (!j["transitions"].is_array()) violation("$.transitions", "expected an array");
  for (size_t i = 0; i < j["transitions"].size(); ++i) {
    std::string path = "$.transitions[" + std::to_string(i) + "]";
    const auto& tr = j["transitions"][i];
    expect_keys(tr, path, {"from", "letter", "to", "tau"});
    SstTransition x;
    x.from = state_index(ids, get_string(tr["from"], path + ".from"), path + ".from");
    x.to = state_index(ids, get_string(tr["to"], path + ".to"), path + ".to");
    x.letter = get_string(tr["letter"], path + ".letter");
    if (!tr["tau"].is_object()) violation(path + ".tau", "expected an object");
    for (const auto& [var, img] : tr["tau"].items())
      x.tau[var] = parse_image(get_string(img, path + ".tau." + var));
    s.transitions.push_back(std::move(x));
  }
  validate_sst(s);
  return s;
}

std::string serialize_sst(const Sst& s) {
  json j;
  j["name"] = s.name;
  j["input_alphabet"] = s.input_alphabet;
  j["output_alphabet"] = s.output_alphabet;
  j["states"] = s.states;
  j["initial"] = s.states[s.initial];
  j["final"] = s.states[s.final];
  j["variables"] = s.variables;
  j["final_variable"] = s.final_variable;
  json trs = json::array();
  for (const auto& tr : s.transitions) {
    json tau = json::object();
    for (const auto& [var, img] : tr.tau) tau[var] = format_image(img);
    trs.push_back({{"from", s.states[tr.from]}, {"letter", tr.letter}, {"to", s.states[tr.to]}, {"tau", tau}});
  }
  j["transitions"] = std::move(trs);
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io-error", "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io-error", "cannot write " + path);
  out << text;
}

Transducer load_transducer(const std::string& path) { return parse_transducer(read_file(path)); }
Sst load_sst(const std::string& path) { return parse_sst(read_file(path)); }

std::string report_json(const PropertyReport& r, const Transducer& t) {
  auto witness = [&](const std::optional<std::pair<int, int>>& w) -> json {
    if (!w) return nullptr;
    return json::array({describe_transition(t, w->first), describe_transition(t, w->second)});
  };
  json j;
  j["deterministic"] = r.deterministic;
  j["codeterministic"] = r.codeterministic;
  j["weakly_branching"] = r.weakly_branching;
  j["reversible"] = r.reversible;
  j["one_way"] = r.one_way;
  j["det_witness"] = witness(r.det_witness);
  j["codet_witness"] = witness(r.codet_witness);
  j["wb_witness"] = witness(r.wb_witness);
  json br = json::array();
  for (const auto& [a, s] : r.branching) br.push_back({{"letter", a}, {"state", t.id(s)}});
  j["branching"] = std::move(br);
  return j.dump(2) + "\n";
}

std::string machine_dot(const Transducer& t) {
  auto quote = [](const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r + "\"";
  };
  auto show = [](const Letter& a) -> std::string {
    if (a == kBegin) return "|-";
    if (a == kEnd) return "-|";
    return a;
  };
  std::ostringstream os;
  os << "digraph " << quote(t.name.empty() ? "T" : t.name) << " {\n  rankdir=LR;\n";
  for (int s = 0; s < t.size(); ++s) {
    os << "  s" << s << " [label=" << quote(t.id(s)) << ", shape="
       << (s == t.final ? "doublecircle" : "circle") << (t.forward(s) ? "" : ", style=dashed") << "];\n";
  }
  os << "  start [shape=point];\n  start -> s" << t.initial << ";\n";
  for (const auto& tr : t.transitions) {
    std::string label = show(tr.letter);
    if (!tr.output.empty()) label += " / " + format_word(tr.output);
    os << "  s" << tr.from << " -> s" << tr.to << " [label=" << quote(label) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace revxdt

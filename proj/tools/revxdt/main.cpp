#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
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

// exit codes
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

void emit(const std::string& out_path, const Transducer& t, bool tags = false) {
  emit(out_path, serialize_transducer(t, tags));
}

std::string show_outputs(const std::set<Word>& s) {
  std::string r = "{";
  bool first = true;
  for (const auto& w : s) {
    r += (first ? "\"" : ", \"") + format_word(w) + "\"";
    first = false;
  }
  return r + "}";
}

void report_counterexample(const Word& u, const std::set<Word>& left, const std::set<Word>& right) {
  std::cout << "differ on \"" << format_word(u) << "\": " << show_outputs(left) << " vs "
            << show_outputs(right) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-way transducer toolkit"};
  app.require_subcommand(1);

  std::string in, in2, out, input, stage, word;
  int max_len = 5;
  size_t max_states = default_max_states();
  bool do_trim = false, tags = false, reachable = false;

  auto* check = app.add_subcommand("check", "print determinism/co-determinism/reversibility as JSON");
  check->add_option("machine", in)->required();

  auto* run = app.add_subcommand("run", "run a machine on one input");
  run->add_option("machine", in)->required();
  run->add_option("--input", input, "letters; whitespace-separated when letters are longer")->required();

  auto* comp = app.add_subcommand("compose", "compose two reversible machines");
  comp->add_option("first", in)->required();
  comp->add_option("second", in2)->required();
  comp->add_option("-o", out);
  comp->add_flag("--trim", do_trim, "drop states off initial-to-final paths");
  comp->add_flag("--reachable", reachable, "build reachable pairs only");

  auto* outline = app.add_subcommand("treeoutline", "tree outline of a co-deterministic 1FT");
  outline->add_option("machine", in)->required();
  outline->add_option("-o", out);
  outline->add_flag("--emit-rule-tags", tags);
  outline->add_option("--dot", word, "print the run tree of this word instead");

  auto* rev = app.add_subcommand("reversibilize", "reversible 2FT for a det or co-det 1FT");
  rev->add_option("machine", in)->required();
  rev->add_option("-o", out);
  rev->add_flag("--reachable", reachable);

  auto* unif = app.add_subcommand("uniformize", "reversible uniformizer of a 2FT");
  unif->add_option("machine", in)->required();
  unif->add_option("-o", out);
  unif->add_option("--max-states", max_states);
  unif->add_option("--stage", stage)->check(CLI::IsMember({"right-oracle", "uniformizer", "follower"}));

  auto* s2r = app.add_subcommand("sst2rev", "reversible 2FT for a copyless SST");
  s2r->add_option("sst", in)->required();
  s2r->add_option("-o", out);
  s2r->add_flag("--reachable", reachable);

  auto* seval = app.add_subcommand("ssteval", "evaluate an SST on one input");
  seval->add_option("sst", in)->required();
  seval->add_option("--input", input)->required();

  auto* eq = app.add_subcommand("equiv", "compare relations on all inputs up to a length");
  eq->add_option("first", in)->required();
  eq->add_option("second", in2)->required();
  eq->add_option("--max-len", max_len);

  auto* uc = app.add_subcommand("uniformcheck", "check that the first machine uniformizes the second");
  uc->add_option("candidate", in)->required();
  uc->add_option("relation", in2)->required();
  uc->add_option("--max-len", max_len);

  auto* trm = app.add_subcommand("trim", "drop states off initial-to-final paths");
  trm->add_option("machine", in)->required();
  trm->add_option("-o", out);

  auto* stats = app.add_subcommand("stats", "state and transition counts, raw and trimmed");
  stats->add_option("machine", in)->required();

  auto* dot = app.add_subcommand("dot", "machine graph, or run tree with --word");
  dot->add_option("machine", in)->required();
  dot->add_option("--word", word);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    ComposeOptions co;
    co.reachable_only = reachable;
    co.max_states = max_states;
    PipelineOptions po;
    po.reachable_only = reachable;
    po.max_states = max_states;

    if (*check) {
      auto t = load_transducer(in);
      auto d = validate(t);
      for (const auto& w : d.warnings) std::cerr << "warning: " << w << "\n";
      if (!d.ok()) {
        for (const auto& e : d.errors) std::cerr << "error: " << e << "\n";
        return kBadInput;
      }
      std::cout << report_json(check_properties(t), t);
      return kOk;
    }

    if (*run) {
      auto t = load_transducer(in);
      Word u = parse_word(input);
      wrap_input(u);  // rejects endmarkers in the input
      if (check_properties(t).deterministic) {
        auto r = run_deterministic(t, u);
        switch (r.kind) {
          case Outcome::Kind::Accepted:
            std::cout << "accepted \"" << format_word(r.output) << "\"\n";
            return kOk;
          case Outcome::Kind::Rejected:
            std::cout << "rejected\n";
            return kFailed;
          case Outcome::Kind::Diverges:
            std::cout << "diverges\n";
            return kFailed;
        }
      }
      auto outs = outputs(Index(t), u, std::max<int>(kDefaultWordBound, static_cast<int>(u.size())));
      if (outs.empty()) {
        std::cout << "rejected\n";
        return kFailed;
      }
      std::cout << "accepted " << show_outputs(outs) << "\n";
      return kOk;
    }

    if (*comp) {
      auto r = compose_reversible(load_transducer(in), load_transducer(in2), co);
      emit(out, do_trim ? trim(r) : r);
      return kOk;
    }

    if (*outline) {
      auto t = load_transducer(in);
      if (outline->count("--dot")) {
        emit(out, run_tree_dot(t, parse_word(word)));
        return kOk;
      }
      emit(out, tree_outline(t), tags);
      return kOk;
    }

    if (*rev) {
      auto t = load_transducer(in);
      auto p = check_properties(t);
      if (!p.one_way) throw Error("precondition-violation", "input is not one-way");
      Transducer r;
      if (p.deterministic)
        r = det1ft_to_reversible(t, po);
      else if (p.codeterministic)
        r = codet1ft_to_reversible(t, po);
      else
        throw Error("precondition-violation", "input is neither deterministic nor co-deterministic");
      emit(out, r);
      return kOk;
    }

    if (*unif) {
      auto t = load_transducer(in);
      if (stage == "right-oracle") {
        emit(out, build_right_oracle(t).machine);
      } else if (stage == "uniformizer") {
        emit(out, build_uniformizer(t).machine);
      } else if (stage == "follower") {
        emit(out, build_follower(t, build_uniformizer(t).slice_letters));
      } else {
        UniformizeOptions uo;
        uo.max_states = max_states;
        emit(out, uniformize(t, uo));
      }
      return kOk;
    }

    if (*s2r) {
      emit(out, sst_to_reversible(load_sst(in), po));
      return kOk;
    }

    if (*seval) {
      auto s = load_sst(in);
      auto r = eval_sst(s, parse_word(input));
      if (!r) {
        std::cout << "rejected\n";
        return kFailed;
      }
      std::cout << "accepted \"" << format_word(*r) << "\"\n";
      return kOk;
    }

    if (*eq) {
      auto r = check_equiv(load_transducer(in), load_transducer(in2), max_len);
      if (r.equal) {
        std::cout << "equivalent up to length " << max_len << "\n";
        return kOk;
      }
      report_counterexample(r.word, r.left, r.right);
      return kFailed;
    }

    if (*uc) {
      auto r = check_uniformizes(load_transducer(in), load_transducer(in2), max_len);
      if (r.ok) {
        std::cout << "uniformizes up to length " << max_len << "\n";
        return kOk;
      }
      std::cout << r.reason << " on \"" << format_word(r.word) << "\": chose " << show_outputs(r.chosen)
                << ", allowed " << show_outputs(r.allowed) << "\n";
      return kFailed;
    }

    if (*trm) {
      emit(out, trim(load_transducer(in)));
      return kOk;
    }

    if (*stats) {
      auto t = load_transducer(in);
      auto tt = trim(t);
      nlohmann::json j;
      j["states"] = t.size();
      j["transitions"] = t.transitions.size();
      j["trimmed_states"] = tt.size();
      j["trimmed_transitions"] = tt.transitions.size();
      std::cout << j.dump(2) << "\n";
      return kOk;
    }

    if (*dot) {
      auto t = load_transducer(in);
      if (dot->count("--word")) {
        std::cout << run_tree_dot(t, parse_word(word));
      } else {
        std::cout << machine_dot(t);
      }
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

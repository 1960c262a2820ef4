#ifndef REVXDT_ONEWAY_HPP
#define REVXDT_ONEWAY_HPP

#include "revxdt/compose.hpp"
#include "revxdt/transducer.hpp"

namespace revxdt {

inline const Letter kReset = "r";

// "(a,q)" for a letter of the endmarked alphabet and a state id
Letter enriched_letter(const Letter& a, const std::string& q);

// One state; each letter a (endmarkers included) becomes (a,q1)...(a,qn) r.
Transducer build_mult(const Transducer& t);

// Q x {0,1} plus init/fin wiring; weakly branching when t is co-deterministic.
Transducer build_desync(const Transducer& t);

struct PipelineOptions {
  // false: every composition is the full product (exact raw counts)
  // true: lazy tree outline and reachable-only products
  bool reachable_only = false;
  size_t max_states = default_max_states();
};

Transducer codet1ft_to_reversible(const Transducer& t, const PipelineOptions& opt = {});

Transducer reverse_1ft(const Transducer& t);

// fw (initial) sweeps right silently, bw copies letters leftwards, out (final) exits.
Transducer build_mirror(const std::vector<Letter>& alphabet);

Transducer det1ft_to_reversible(const Transducer& t, const PipelineOptions& opt = {});

// raw state counts of the full-product pipelines for an n-state input
size_t codet_pipeline_states(size_t n);
size_t det_pipeline_states(size_t n);

}  // namespace revxdt

#endif

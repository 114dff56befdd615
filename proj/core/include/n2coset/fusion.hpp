#pragma once

#include <optional>

#include "n2coset/catalog.hpp"

namespace n2coset {

/* sl2 fusion multiplicity N^{(u) r''}_{r, r'}: all indices 1..u-1. */
struct FusionCoeffQuery {
    long u;
    long r;
    long rp;
    long rpp;
};

long fusion_coeff(const FusionCoeffQuery& q);

struct FusionResult {
    std::optional<GrothVector> exact;  // direct-sum decomposition into indecomposables
    GrothVector grothendieck;
    bool conjectural = false;
};

/* Fusion rules of the unitary model M(u,1); exact and Grothendieck coincide. */
FusionResult fuse_unitary(const MinimalModel& m, const ModuleLabel& a, const ModuleLabel& b);

/* Grothendieck fusion of v >= 2 models.  Inputs may be any N=2 labels
 * (reducible ones are decomposed first); the result is expressed in the
 * canonical irreducible basis. */
GrothVector groth_fuse_n2(const MinimalModel& m, const ModuleLabel& a, const ModuleLabel& b);

/* Grothendieck fusion of the sl2 minimal model itself, with spectral-flow
 * decorations kept symbolic through the flow field. */
GrothVector groth_fuse_sl2(const MinimalModel& m, const ModuleLabel& a, const ModuleLabel& b);

/* Push an sl2 Grothendieck vector through the branching dictionary onto the
 * coset classes at total grading (i_total, p_total). */
GrothVector sl2_to_coset(const MinimalModel& m, const GrothVector& sl2vec, long i_total,
                         const Rational& p_total);

/* Exact (non-Grothendieck) fusion for the stated rules:
 * L x L, L x E, L x D and E_{(1,1)} x E; everything else raises
 * NoKnownExactRule.  E x E products are conjectural and may contain
 * staggered summands. */
FusionResult fuse_exact(const MinimalModel& m, const ModuleLabel& a, const ModuleLabel& b);

/* Product of two irreducible classes (dispatches on the model). */
GrothVector pair_product(const MinimalModel& m, const ModuleLabel& a, const ModuleLabel& b);

struct RingReport {
    bool pass = true;
    long pairs_checked = 0;
    long triples_checked = 0;
    long out_of_window = 0;  // products whose labels left the momentum window
    std::vector<std::string> failures;
};

/* Commutativity on all pairs, associativity on all triples, unit behaviour
 * of the vacuum and conjugation compatibility over the given label set. */
RingReport ring_check(const MinimalModel& m, const std::vector<ModuleLabel>& labels, bool exact,
                      const Rational& p_window);

/* Canonical labels with momentum in [-p_window, p_window]: the full list for
 * v = 1, the L/D/E lattice sample for v >= 2. */
std::vector<ModuleLabel> ring_label_set(const MinimalModel& m, const Rational& p_window);

}  // namespace n2coset

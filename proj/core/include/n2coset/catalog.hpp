#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "n2coset/arith.hpp"
#include "n2coset/errors.hpp"

namespace n2coset {

/* N=2 minimal model parameters: c = 3 - 6v/u, t = u/v, level k = t - 2.
 * Unitary iff v = 1. */
struct MinimalModel {
    long u = 2;
    long v = 1;

    MinimalModel() = default;
    MinimalModel(long u_, long v_);

    Rational t() const { return rat(u, v); }
    Rational level() const { return t() - 2; }
    Rational central_charge() const { return Rational(3) - rat(6 * v, u); }
    bool unitary() const { return v == 1; }
};

enum class Algebra { N2, SL2, Ghost, Fock, Virasoro };
enum class Family { L, DPlus, DMinus, ETypical, EPlus, EMinus, Staggered, GhostSector, FockMomentum, VirKac };
enum class Parity { Even, Odd };
enum class Sector { NS, R };

const char* algebra_name(Algebra a);
const char* family_name(Family f);

/* One module of one algebra.  Which fields are meaningful depends on the
 * (algebra, family) pair; unused fields stay at their defaults so that
 * labels compare cleanly as tuples.
 *   N2 L:        i, p, r            (s = 0)
 *   N2 D+/D-:    i, p, r, s
 *   N2 E:        i, p, r, s, lambda (lambda == p - i mod 2)
 *   N2 E+/E-/S:  i, p, r, s
 *   SL2 L:       r, flow            (s = 0)
 *   SL2 D+/D-:   r, s, flow
 *   SL2 E:       lambda, r, s, flow
 *   Ghost:       i;  Fock: p;  Virasoro: r, s
 */
struct ModuleLabel {
    Algebra algebra = Algebra::N2;
    Family family = Family::L;
    long i = 0;
    Rational p{0};
    long r = 1;
    long s = 0;
    Rational lambda{0};
    long flow = 0;
    Parity parity = Parity::Even;

    friend bool operator==(const ModuleLabel& a, const ModuleLabel& b);
    friend bool operator<(const ModuleLabel& a, const ModuleLabel& b);
};

std::string label_str(const ModuleLabel& l);

ModuleLabel n2_L(long i, Rational p, long r);
ModuleLabel n2_D(long i, Rational p, long r, long s, bool plus = true);
ModuleLabel n2_E(long i, Rational p, long r, long s);
ModuleLabel n2_Epm(long i, Rational p, long r, long s, bool plus);
ModuleLabel n2_S(long i, Rational p, long r, long s);
ModuleLabel sl2_L(long r, long flow = 0);
ModuleLabel sl2_D(long r, long s, bool plus = true, long flow = 0);
ModuleLabel sl2_E(Rational lambda, long r, long s, long flow = 0);

struct HighestWeightData {
    Parity parity = Parity::Even;
    Rational j{0};
    Rational delta{0};
    Sector sector = Sector::NS;
};

/* Finite integer combination of canonical labels. */
struct GrothVector {
    std::map<ModuleLabel, long> terms;

    void add(const ModuleLabel& l, long mult);
    GrothVector& operator+=(const GrothVector& o);
    friend bool operator==(const GrothVector& a, const GrothVector& b);
    long total_multiplicity() const;
};

std::string groth_str(const GrothVector& g);

struct Weights {
    Rational lambda;     // lambda_{r,s} = r - 1 - t s
    Rational delta_sl2;  // Delta_{r,s} = ((r - t s)^2 - 1)/4t
    Rational h_n2;       // h_{p;r,s} = Delta_{r,s} - p^2/4t
};

Weights weights(const MinimalModel& m, long r, long s, const Rational& p);

/* Kac-table dictionary of the unitary model M(u,1): coset label (i, p, r)
 * -> parity, charge, dimension.  p is reduced into the fundamental window
 * first. */
HighestWeightData dictionary_unitary(const MinimalModel& m, long i, long p, long r);

/* Dictionary for v >= 2, families L / D+ / E. */
HighestWeightData dictionary_nonunitary(const MinimalModel& m, const ModuleLabel& label);

/* Dispatch on the model and label family. */
HighestWeightData dictionary(const MinimalModel& m, const ModuleLabel& label);

void validate_label(const MinimalModel& m, const ModuleLabel& label);

/* Unique representative of the isomorphism class:
 *  - i reduced mod 4 everywhere;
 *  - v = 1: (i,p,r) ~ (i+2, p+u, u-r) ~ (i, p+2u, r) reduced into the
 *    half-window p in {-r, ..., r-1};
 *  - v >= 2: D- rewritten through spectral flow as D+/L, the boundary
 *    s = v-1 D-family folded onto the L-family, staggered s = v-1 folded
 *    onto s = 0, typicals reduced to lambda in [0,2) and the (r,s) ~
 *    (u-r, v-s) representative.
 */
ModuleLabel canonical_label(const MinimalModel& m, const ModuleLabel& label);

/* half_flows applications of sigma^{1/2} (each maps (i,p) -> (i-1, p-1)),
 * preceded by conjugation when requested ((i,p) -> (-i,-p), D+ <-> D-,
 * lambda -> -lambda). */
ModuleLabel twist_label(const MinimalModel& m, const ModuleLabel& label, long half_flows, bool conjugate);

struct Orbit {
    ModuleLabel representative;
    long length = 0;
    bool parity_closed = false;  // closed under parity reversal
};

/* Spectral-flow orbits of the 2u(u-1) canonical labels of M(u,1). */
std::vector<Orbit> orbits(long u);

struct KacTable {
    long u = 0;
    // full table: rows r = 1..u-1, columns p = -r..2u-r-1
    std::map<std::pair<long, long>, HighestWeightData> full;
    // reduced table: p = -r..r-1, parity dropped (kept as stored)
    std::map<std::pair<long, long>, HighestWeightData> reduced;
};

KacTable kac_table(long u);

/* Composition factors in the Grothendieck group.  E+/E-/staggered labels
 * decompose; irreducibles map to themselves. */
GrothVector groth_decompose(const MinimalModel& m, const ModuleLabel& label);

/* Whether the atypical standard E+ label is a highest-weight module
 * (p >= lambda_{r,s} + 1). */
bool is_highest_weight(const MinimalModel& m, const ModuleLabel& label);

/* mod into [0, m) for rationals */
Rational rat_mod(const Rational& x, const Rational& m);
long imod(long x, long m);

}  // namespace n2coset

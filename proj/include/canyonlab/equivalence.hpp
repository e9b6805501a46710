#pragma once

#include <string>
#include <vector>

#include "canyonlab/invariants.hpp"

namespace canyonlab {

// A bijection between the card-range canyons of two germs (tangential,
// gradient degree > 1) that preserves every discrete invariant: degree,
// order h, tangent-line grouping, cluster partition, pairwise contact
// orders and the omega partition. Group and cluster maps are derived
// from the canyon map.
struct Matching {
  std::vector<std::pair<int, int>> canyons;   // (f canyon id, g canyon id)
  std::vector<std::pair<int, int>> groups;    // tangent group indices
  std::vector<std::pair<int, int>> clusters;  // cluster indices
  int image_of(int f_canyon) const;
};

// The relation c^k = v on the scale constant of a matching homeomorphism,
// weakened to the integer form c^p = w with w = v^(q * sign p), k = p/q.
struct ScaleConstraint {
  Rat k;
  Coeff v;
  long p = 0;
  long q = 1;
  Coeff w;
  std::string origin;  // which card entries produced the relation
};

// Outcome of solve_scale_constraints: either the finite candidate set
// { c : c^g = z } or a witness index of an inconsistent pair of relations.
struct ScaleSolution {
  bool unsat = false;
  int failing = -1;          // index of the constraint contradicting z
  long root_order = 1;       // g = gcd of the integer exponents
  Coeff z;                   // forced value of c^g
  std::vector<Coeff> candidates;
};

// Outcome of refined_check for one candidate c.
struct RefinedResult {
  bool consistent = false;
  int pair_f = -1, pair_g = -1;  // f canyon ids of the refuting pair
  Rat exponent;                  // first exponent with an unmatchable term
  Coeff residual;                // its coefficient
  bool have_dev = false;
  Development dev;               // the development P used by the refutation
  std::string detail;
};

struct CandidateOutcome {
  Coeff c;
  bool refuted = false;
  RefinedResult result;
};

// Per-matching certificate entry. route is one of:
//   "invariant_mismatch"  - a ladder invariant differs under the bijection
//   "scale_constraints"   - the relations on c have no common solution
//   "refined_check"       - every candidate c fails the development check
//   "survived"            - not refuted (the verdict is then Inconclusive)
struct MatchingOutcome {
  Matching matching;
  std::string route;
  bool refuted = false;
  std::vector<ScaleConstraint> constraints;
  ScaleSolution solution;
  std::vector<CandidateOutcome> candidates;
  std::string detail;
};

struct Verdict {
  enum class Kind { NotEquivalent, Inconclusive };
  Kind kind = Kind::Inconclusive;
  // One entry per enumerated matching; empty with kind NotEquivalent
  // means the discrete data already differ.
  std::vector<MatchingOutcome> certificate;
  std::string summary;
};

// All invariant-preserving bijections, canyon by canyon. Throws
// CombinatorialBlowup past the cap. Empty iff the discrete data differ.
std::vector<Matching> enumerate_matchings(const IdentityCard& f,
                                          const IdentityCard& g,
                                          long cap = 10000);

struct ConstraintBuild {
  bool mismatch = false;  // a ladder invariant differs: matching refuted
  std::string detail;
  std::vector<ScaleConstraint> constraints;
};

// The relations on c implied by a matching: c^h = a_f/a_g per canyon,
// c^(H-h) = diff_f/diff_g per applicable pair record, c^(H'-H) per
// applicable triple record. mismatch is set when an order invariant
// (H, H') differs under the bijection, which already refutes the
// matching before any constraint solving.
ConstraintBuild scale_constraints(const IdentityCard& f,
                                  const IdentityCard& g, const Matching& m);

// Reduce to c^g = z by Bezout combination of the integer relations;
// unsat when some relation contradicts z beyond the ball tolerance.
// Candidates are the g complex g-th roots of z.
ScaleSolution solve_scale_constraints(
    const std::vector<ScaleConstraint>& constraints);

// Develop the matching homeomorphism along each matched canyon pair in a
// common cluster and test the pair difference relation through the window
// (h, h + delta - 1): a surviving residual term strictly below the window
// top, where the free tail parameter of the pair enters, refutes c. The
// composition branch on the g side (choice of conjugate arc) is
// enumerated; a refutation requires every branch to fail.
RefinedResult refined_check(const IdentityCard& f, const IdentityCard& g,
                            const Matching& m, const Coeff& c);

// Full decision procedure on precomputed cards.
Verdict decide_cards(const IdentityCard& f, const IdentityCard& g,
                     long matching_cap = 10000);

// NotEquivalent iff every matching is refuted; any ambiguity (precision,
// truncation) downgrades the affected matching to "survived" and the
// verdict to Inconclusive. The tool never claims equivalence.
Verdict decide(const BivarPoly& f, const BivarPoly& g,
               std::optional<Rat> trunc_override = {});

}  // namespace canyonlab

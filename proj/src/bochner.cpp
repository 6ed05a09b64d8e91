#include "dendro/bochner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "dendro/error.hpp"
#include "dendro/median_cocycle.hpp"

namespace dendro {

namespace {

Rat rat_abs(const Rat& v) { return v < 0 ? Rat(-v) : v; }

Rat int_pow(const Rat& base, int exp) {
  Rat out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void check_shapes(const ProbSpace& space, const LambdaTable& lambda, const BochnerElement& u) {
  if (u.atoms() != space.size() || u.lambda_size() != lambda.size()) {
    throw Error(ErrorKind::BadParams, "element shape does not match the space and tree");
  }
}

}  // namespace

BochnerElement& BochnerElement::operator+=(const BochnerElement& other) {
  for (int s = 0; s < atoms(); ++s) {
    for (int i = 0; i < lambda_size(); ++i) values_[s][i] += other.values_[s][i];
  }
  return *this;
}

BochnerElement& BochnerElement::operator-=(const BochnerElement& other) {
  for (int s = 0; s < atoms(); ++s) {
    for (int i = 0; i < lambda_size(); ++i) values_[s][i] -= other.values_[s][i];
  }
  return *this;
}

BochnerElement& BochnerElement::operator*=(const Rat& scale) {
  for (int s = 0; s < atoms(); ++s) {
    for (int i = 0; i < lambda_size(); ++i) values_[s][i] *= scale;
  }
  return *this;
}

bool zero_on_support(const ProbSpace& space, const BochnerElement& u) {
  for (int s : space.support()) {
    for (int i = 0; i < u.lambda_size(); ++i) {
      if (u.at(s, i) != 0) return false;
    }
  }
  return true;
}

bool equal_on_support(const ProbSpace& space, const BochnerElement& a, const BochnerElement& b) {
  for (int s : space.support()) {
    for (int i = 0; i < a.lambda_size(); ++i) {
      if (a.at(s, i) != b.at(s, i)) return false;
    }
  }
  return true;
}

double bochner_norm(const ProbSpace& space, const LambdaTable& lambda, const BochnerElement& u,
                    const NormExponent& q, const Rat& p) {
  check_shapes(space, lambda, u);
  if (p < 1 || (!q.is_infinity && q.value < 1)) {
    throw Error(ErrorKind::BadExponent, "exponents must be at least 1");
  }
  const double pd = rat_to_double(p);
  auto fiber_norm = [&](int s) {
    double total = 0;
    for (int i = 0; i < u.lambda_size(); ++i) {
      total += std::pow(std::abs(rat_to_double(u.at(s, i))), pd);
    }
    return std::pow(total, 1.0 / pd);
  };
  if (q.is_infinity) {
    double best = 0;
    for (int s : space.support()) best = std::max(best, fiber_norm(s));
    return best;
  }
  const double qd = rat_to_double(q.value);
  double total = 0;
  for (int s : space.support()) {
    total += rat_to_double(space.measure(s)) * std::pow(fiber_norm(s), qd);
  }
  return std::pow(total, 1.0 / qd);
}

Rat norm_power_total(const ProbSpace& space, const LambdaTable& lambda, const BochnerElement& u,
                     int q, int p) {
  check_shapes(space, lambda, u);
  if (p < 1 || q < 1 || q % p != 0) {
    throw Error(ErrorKind::BadExponent, "exact norm totals need integer exponents with p | q");
  }
  Rat total = 0;
  for (int s : space.support()) {
    Rat fiber = 0;
    for (int i = 0; i < u.lambda_size(); ++i) fiber += int_pow(rat_abs(u.at(s, i)), p);
    total += space.measure(s) * int_pow(fiber, q / p);
  }
  return total;
}

std::vector<std::pair<Rat, Rat>> fiber_profile(const ProbSpace& space, const LambdaTable& lambda,
                                               const BochnerElement& u, int p) {
  check_shapes(space, lambda, u);
  if (p < 1) throw Error(ErrorKind::BadExponent, "exponents must be at least 1");
  std::vector<std::pair<Rat, Rat>> rows;
  for (int s : space.support()) {
    Rat fiber = 0;
    for (int i = 0; i < u.lambda_size(); ++i) fiber += int_pow(rat_abs(u.at(s, i)), p);
    rows.emplace_back(space.measure(s), fiber);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

BochnerElement bochner_act(const VirtualDendroMorphism& vdm, const LambdaTable& lambda, int g,
                           const BochnerElement& u) {
  const ProbSpace& space = *vdm.space;
  check_shapes(space, lambda, u);
  if (lambda.tree().size() != vdm.tree->size()) {
    throw Error(ErrorKind::MismatchedTree, "branch-pair table was built from a different tree");
  }
  const int gi = vdm.group().inv(g);
  BochnerElement out(space.size(), lambda.size());
  for (int s = 0; s < space.size(); ++s) {
    const int t = space.act(gi, s);
    const Automorphism& twist_back = vdm.at(gi, s);
    for (int i = 0; i < lambda.size(); ++i) {
      out.set(s, i, u.at(t, lambda.act(twist_back, i)));
    }
  }
  return out;
}

std::vector<BochnerElement> invariant_vector_basis(const VirtualDendroMorphism& vdm,
                                                   const LambdaTable& lambda) {
  const ProbSpace& space = *vdm.space;
  std::vector<BochnerElement> basis;
  std::set<std::pair<int, int>> visited;
  for (int s : space.support()) {
    for (int i = 0; i < lambda.size(); ++i) {
      if (visited.count({s, i})) continue;
      BochnerElement indicator(space.size(), lambda.size());
      std::queue<std::pair<int, int>> work;
      work.push({s, i});
      visited.insert({s, i});
      while (!work.empty()) {
        const auto [cs, ci] = work.front();
        work.pop();
        indicator.set(cs, ci, Rat(1));
        for (int g = 0; g < vdm.group().size(); ++g) {
          const std::pair<int, int> next{space.act(g, cs), lambda.act(vdm.at(g, cs), ci)};
          if (visited.insert(next).second) work.push(next);
        }
      }
      basis.push_back(std::move(indicator));
    }
  }
  return basis;
}

EquivariantFamily elementarity_certificate(const VirtualDendroMorphism& vdm,
                                           const LambdaTable& lambda, const BochnerElement& u) {
  const ProbSpace& space = *vdm.space;
  check_shapes(space, lambda, u);
  for (int g = 0; g < vdm.group().size(); ++g) {
    if (!equal_on_support(space, bochner_act(vdm, lambda, g, u), u)) {
      throw Error(ErrorKind::NotInvariant,
                  "element is moved by group element " + vdm.group().name(g));
    }
  }
  if (zero_on_support(space, u)) {
    throw Error(ErrorKind::ZeroVector, "certificate needs a nonzero element");
  }

  // Top level: max |value| per fiber, constant across the support.
  Rat level = -1;
  for (int s : space.support()) {
    Rat fiber_max = 0;
    for (int i = 0; i < lambda.size(); ++i) fiber_max = std::max(fiber_max, rat_abs(u.at(s, i)));
    if (level < 0) {
      level = fiber_max;
    } else if (level != fiber_max) {
      throw Error(ErrorKind::NonConstantLevel,
                  "fiber maxima differ across the support (space is not ergodic)");
    }
  }

  EquivariantFamily family;
  family.fibers.assign(space.size(), {});
  int kinds_seen = 0;  // bit 1: point, bit 2: pair
  for (int s : space.support()) {
    std::set<int> projected;
    for (int i = 0; i < lambda.size(); ++i) {
      if (rat_abs(u.at(s, i)) == level) projected.insert(lambda.at(i).base);
    }
    const Subdendrite hull =
        dendro_hull(*vdm.tree, std::vector<int>(projected.begin(), projected.end()));
    const CenterResult center = jordan_center(*vdm.tree, hull);
    if (center.is_edge) {
      family.fibers[s] = {std::min(center.v1, center.v2), std::max(center.v1, center.v2)};
      kinds_seen |= 2;
    } else {
      family.fibers[s] = {center.v1};
      kinds_seen |= 1;
    }
  }
  if (kinds_seen == 3) {
    throw Error(ErrorKind::MixedCenterKind,
                "orbits disagree on the center kind (vertex vs edge)");
  }
  family.kind = kinds_seen == 2 ? FamilyKind::Pair : FamilyKind::Point;

  const CheckOutcome check = check_equivariant_family(vdm, family);
  if (!check.ok) {
    throw std::logic_error("certificate family failed its own invariant: " + check.failure);
  }
  return family;
}

namespace {

void check_phi_shape(const VirtualDendroMorphism& vdm, const ProbSpace& boundary,
                     const CandidateFurstenbergMap& phi) {
  if (&boundary.group() != &vdm.group()) {
    throw Error(ErrorKind::BadParams, "boundary model uses a different group");
  }
  if (static_cast<int>(phi.assignment.size()) != boundary.size()) {
    throw Error(ErrorKind::BadParams, "candidate map does not cover every boundary point");
  }
  for (const auto& row : phi.assignment) {
    if (static_cast<int>(row.size()) != vdm.space->size()) {
      throw Error(ErrorKind::BadParams, "candidate map does not cover every atom");
    }
    for (int v : row) {
      if (v < 0 || v >= vdm.tree->size()) {
        throw Error(ErrorKind::BadDomain, "candidate map leaves the vertex set");
      }
    }
  }
}

CheckOutcome check_phi_equivariance(const VirtualDendroMorphism& vdm, const ProbSpace& boundary,
                                    const CandidateFurstenbergMap& phi) {
  CheckOutcome outcome;
  for (int g = 0; g < vdm.group().size(); ++g) {
    for (int b : boundary.support()) {
      for (int s : vdm.space->support()) {
        ++outcome.checked;
        const int moved = phi.assignment[boundary.act(g, b)][vdm.space->act(g, s)];
        if (moved != vdm.at(g, s)(phi.assignment[b][s])) {
          outcome.ok = false;
          outcome.failure = "candidate map is not equivariant at (" + vdm.group().name(g) + "," +
                            boundary.atom(b) + "," + vdm.space->atom(s) + ")";
          return outcome;
        }
      }
    }
  }
  return outcome;
}

}  // namespace

FurstenbergReport verify_furstenberg_candidate(const VirtualDendroMorphism& vdm,
                                               const ProbSpace& boundary,
                                               const CandidateFurstenbergMap& phi,
                                               const EquivariantFamily& M) {
  check_phi_shape(vdm, boundary, phi);
  if (M.kind != FamilyKind::Subdendrite) {
    throw Error(ErrorKind::BadParams, "slice check needs a subdendrite family");
  }
  if (!check_equivariant_family(vdm, M).ok) {
    throw Error(ErrorKind::NotEquivariantInput, "subdendrite family must be equivariant");
  }

  FurstenbergReport report;
  report.equivariance = check_phi_equivariance(vdm, boundary, phi);

  for (int b : boundary.support()) {
    for (int s : vdm.space->support()) {
      ++report.ends.checked;
      const std::vector<int>& fiber = M.fibers[s];
      const int v = phi.assignment[b][s];
      int inside_degree = 0;
      bool member = false;
      for (int w : fiber) {
        if (w == v) member = true;
        if (vdm.tree->adjacent(v, w)) ++inside_degree;
      }
      if (!member || inside_degree > 1) {
        report.ends.ok = false;
        report.ends.failure = "slice value " + vdm.tree->id(v) + " at (" + boundary.atom(b) +
                              "," + vdm.space->atom(s) + ") is not an end of the fiber";
        return report;
      }
    }
  }
  return report;
}

std::pair<PullbackCochain, PullbackReport> pullback_class(const VirtualDendroMorphism& vdm,
                                                          const LambdaTable& lambda,
                                                          const ProbSpace& boundary,
                                                          const CandidateFurstenbergMap& phi) {
  check_phi_shape(vdm, boundary, phi);
  const CheckOutcome equivariant = check_phi_equivariance(vdm, boundary, phi);
  if (!equivariant.ok) throw Error(ErrorKind::NotEquivariant, equivariant.failure);

  const ProbSpace& space = *vdm.space;
  const int nb = boundary.size();
  PullbackCochain cochain;
  cochain.boundary_size = nb;
  cochain.table.assign(static_cast<std::size_t>(nb) * nb * nb,
                       BochnerElement(space.size(), lambda.size()));
  for (int b0 = 0; b0 < nb; ++b0) {
    for (int b1 = 0; b1 < nb; ++b1) {
      for (int b2 = 0; b2 < nb; ++b2) {
        BochnerElement& entry = cochain.table[(b0 * nb + b1) * nb + b2];
        for (int s : space.support()) {
          const SparseBundleFunction value =
              omega(*vdm.tree, phi.assignment[b0][s], phi.assignment[b1][s],
                    phi.assignment[b2][s]);
          for (const auto& [key, v] : value.entries()) {
            entry.set(s,
                      lambda.index_of(
                          {std::get<0>(key), std::get<1>(key), std::get<2>(key)}),
                      Rat(v));
          }
        }
      }
    }
  }

  PullbackReport report;

  for (int b0 = 0; b0 < nb; ++b0) {
    for (int b1 = 0; b1 < nb; ++b1) {
      for (int b2 = 0; b2 < nb; ++b2) {
        ++report.alternating.checked;
        BochnerElement swap01 = cochain.at(b1, b0, b2);
        swap01 *= Rat(-1);
        BochnerElement swap12 = cochain.at(b0, b2, b1);
        swap12 *= Rat(-1);
        if (!equal_on_support(space, cochain.at(b0, b1, b2), swap01) ||
            !equal_on_support(space, cochain.at(b0, b1, b2), swap12)) {
          report.alternating.ok = false;
          report.alternating.failure = "table is not alternating at (" + boundary.atom(b0) +
                                       "," + boundary.atom(b1) + "," + boundary.atom(b2) + ")";
        }
      }
    }
  }

  // Invariance and vanishing are almost-everywhere statements: zero-measure
  // boundary points carry no equivariance guarantee, so they are skipped.
  for (int g = 0; g < vdm.group().size() && report.invariance.ok; ++g) {
    for (int b0 : boundary.support()) {
      if (!report.invariance.ok) break;
      for (int b1 : boundary.support()) {
        if (!report.invariance.ok) break;
        for (int b2 : boundary.support()) {
          ++report.invariance.checked;
          const BochnerElement moved =
              bochner_act(vdm, lambda, g, cochain.at(b0, b1, b2));
          const BochnerElement& direct =
              cochain.at(boundary.act(g, b0), boundary.act(g, b1), boundary.act(g, b2));
          if (!equal_on_support(space, moved, direct)) {
            report.invariance.ok = false;
            report.invariance.failure = "table is not invariant under " + vdm.group().name(g);
            break;
          }
        }
      }
    }
  }

  for (int b0 = 0; b0 < nb && report.coboundary.ok; ++b0) {
    for (int b1 = 0; b1 < nb && report.coboundary.ok; ++b1) {
      for (int b2 = 0; b2 < nb && report.coboundary.ok; ++b2) {
        for (int b3 = 0; b3 < nb; ++b3) {
          ++report.coboundary.checked;
          BochnerElement total = cochain.at(b1, b2, b3);
          total -= cochain.at(b0, b2, b3);
          total += cochain.at(b0, b1, b3);
          total -= cochain.at(b0, b1, b2);
          if (!zero_on_support(space, total)) {
            report.coboundary.ok = false;
            report.coboundary.failure =
                "alternating sum is nonzero at (" + boundary.atom(b0) + "," +
                boundary.atom(b1) + "," + boundary.atom(b2) + "," + boundary.atom(b3) + ")";
            break;
          }
        }
      }
    }
  }

  report.identically_zero = true;
  for (int b0 : boundary.support()) {
    for (int b1 : boundary.support()) {
      for (int b2 : boundary.support()) {
        if (!zero_on_support(space, cochain.at(b0, b1, b2))) {
          report.identically_zero = false;
          break;
        }
      }
    }
  }

  report.small_essential_images = true;
  for (int s : space.support()) {
    std::set<int> image;
    for (int b : boundary.support()) image.insert(phi.assignment[b][s]);
    if (image.size() > 2) {
      report.small_essential_images = false;
      break;
    }
  }
  report.dichotomy_consistent = report.identically_zero == report.small_essential_images;

  return {std::move(cochain), std::move(report)};
}

}  // namespace dendro

#pragma once

// Maximal tori of GL_n(F_q) counted by the cycle type of their Frobenius
// twisting, and statistics weighted by character polynomials.

#include "repstab/charpoly.hpp"
#include "repstab/exact.hpp"
#include "repstab/qpoly.hpp"
#include "repstab/symcore.hpp"

#include <map>

namespace repstab::tori {

using charpoly::Statistic;
using symcore::Partition;

/// q^(n(n-1)/2) prod_{i=1..n} (q^i - 1). Throws ArgumentError for n < 1 or composite q.
Integer gl_order(int n, int q);
QPoly gl_order_polynomial(int n);

/// |GL_n(F_q)| / (z_mu prod_j (q^{mu_j} - 1)) for every mu of n. Throws
/// FormulaViolation if a division is not exact.
std::map<Partition, Integer> tori_count_by_type(int n, int q);
/// The same count as a polynomial in q (rational coefficients, integer valued).
QPoly tori_count_polynomial(const Partition& mu);

struct ToriResult {
  Rational total = 0;
  Rational expectation = 0;  // total / q^(n^2 - n)
};

ToriResult tori_statistic(int n, int q, const Statistic& p);

/// Enumerates GL_n(F_q) and, for each type, the conjugacy orbit of the
/// standard torus algebra prod_j F_{q^{mu_j}} embedded block-diagonally;
/// orbit size = |G| / |stabilizer|. Throws CostGuardError unless n <= 3 and q <= 3.
std::map<Partition, Integer> brute_force_tori(int n, int q);

}  // namespace repstab::tori

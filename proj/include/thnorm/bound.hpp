#pragma once

// Simplicial-volume lower bounds from a combinatorial norm v:
//   ||M|| >= Vol(M) / (pi^n * v).
// The only place pi enters; everything upstream is rational.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thnorm/rational.hpp"

namespace thnorm {

/// A volume of the form coefficient * pi^pi_power.
struct Volume {
  Rational coefficient;
  int pi_power = 0;
};

/// Accepts "2", "0.75", "3/2", "pi", "pi^3", "2*pi^3", "1/2*pi^2".
Volume parse_volume(std::string_view text);
std::string to_string(const Volume& v);

/// Established norms for n = 1, 2, 3 (1, 2/3, 11/45); empty otherwise.
std::optional<Rational> known_norm(int n);

struct BoundResult {
  int n = 0;
  Rational norm;
  std::string volume;
  Rational coefficient;  // lower_bound = coefficient * pi^pi_power
  int pi_power = 0;
  std::string symbolic;  // "45/(11*pi^3)"
  std::string decimal;   // `digits` significant digits, round-half-even
  std::optional<Rational> exact;
  std::vector<int> genera;  // set for surface products
  std::string product_form;
};

/// Vol(M) / (pi^n * v). digits in [1, 60].
BoundResult compute_bound(int n, const Rational& norm, const Volume& volume, int digits = 30);

/// Product of closed hyperbolic surfaces of genus g_i >= 2: Vol = prod 4*pi*(g_i - 1),
/// and ||S_g|| = 4g - 4, so the bound is prod(4g_i - 4) / v.
BoundResult surface_bound(const Rational& norm, std::span<const int> genera, int digits = 30);

/// c * pi^k to `digits` significant digits.
std::string pi_multiple_decimal(const Rational& c, int k, int digits);

}  // namespace thnorm

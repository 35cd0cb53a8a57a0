#pragma once

// Problem definition for a particle whose mass varies in the plane:
//
//   M(x,y) = m0 [1 + g1 e^{-a1 x} + g3 e^{-a2 y} + g2 e^{-2 a1 x} + g4 e^{-2 a2 y}]
//   V(x,y) = r + (a + b1 e^{-a1 x} + b3 e^{-a2 y} + b2 e^{-2 a1 x} + b4 e^{-2 a2 y}) / M(x,y)
//
// together with the von Roos ordering triple (alpha, beta, gamma) of the
// kinetic operator. Note that a1/a2 are decay rates, unrelated to the
// ordering parameter alpha.

namespace pdm {

/// Von Roos ordering exponents. Construction enforces alpha + beta + gamma = -1.
class OrderingParams {
 public:
  static constexpr double kConstraintTolerance = 1e-12;

  OrderingParams(double alpha, double beta, double gamma);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }

  /// alpha + gamma + 1; multiplies the Laplacian-of-mass term.
  double laplacian_coefficient() const noexcept { return alpha_ + gamma_ + 1.0; }
  /// alpha + gamma + alpha*gamma + 3/4; multiplies the squared-gradient term.
  double gradient_coefficient() const noexcept {
    return alpha_ + gamma_ + alpha_ * gamma_ + 0.75;
  }
  /// Both coefficient combinations vanish, so V_eff == V.
  bool is_ambiguity_free() const noexcept;

  friend bool operator==(const OrderingParams&, const OrderingParams&) = default;

 private:
  double alpha_;
  double beta_;
  double gamma_;
};

struct MassParams {
  double m0 = 1.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
  double g4 = 0.0;
  double a1 = 1.0;
  double a2 = 1.0;

  /// Throws InvalidParameter unless m0, a1, a2 > 0 and all g >= 0.
  void validate() const;

  friend bool operator==(const MassParams&, const MassParams&) = default;
};

struct PotentialParams {
  double r = 0.0;
  double a = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
  double b4 = 0.0;

  void validate() const;

  friend bool operator==(const PotentialParams&, const PotentialParams&) = default;
};

class Model {
 public:
  Model(double hbar, MassParams mass, PotentialParams pot,
        OrderingParams ordering);

  /// The symmetric parameter set used for the published example:
  /// r=0, a=m0=g1=g3=a1=a2=hbar=1, g2=g4=0, b1=b3=-1, b2=b4=1/8.
  static Model paper_example();

  double hbar() const noexcept { return hbar_; }
  const MassParams& mass() const noexcept { return mass_; }
  const PotentialParams& pot() const noexcept { return pot_; }
  const OrderingParams& ordering() const noexcept { return ordering_; }

  Model with_ordering(OrderingParams ordering) const;

  /// Mass and potential are invariant under x <-> y.
  bool is_xy_symmetric() const noexcept;

  /// lim V(x,y) as x,y -> +inf, i.e. r + a/m0.
  double asymptotic_potential() const noexcept { return pot_.r + pot_.a / mass_.m0; }

  friend bool operator==(const Model&, const Model&) = default;

 private:
  double hbar_;
  MassParams mass_;
  PotentialParams pot_;
  OrderingParams ordering_;
};

struct MassDerivatives {
  double value;
  double dx;
  double dy;
  double dxx;
  double dyy;
};

double mass_at(const MassParams& mass, double x, double y);

/// Exact partial derivatives of M; no finite differences involved.
MassDerivatives mass_derivatives(const MassParams& mass, double x, double y);

double potential_at(const Model& model, double x, double y);

/// Solves alpha + gamma + 1 = 0 and alpha + gamma + alpha*gamma + 3/4 = 0
/// together with the von Roos constraint.
OrderingParams solve_ambiguity_free_ordering();

}  // namespace pdm

#pragma once

#include <string>
#include <vector>

#include "gschw/jet.hpp"
#include "gschw/sl2.hpp"

namespace gschw {

// The nilpotent adjoint-valued field -(1/(2 f')) (f, -f^2; 1, -f) built from a
// jet of f. Entries are jets one order below the input.
struct CompositeField {
  JetMatrix matrix;

  int order() const noexcept { return matrix.a.order(); }
  // k-th time derivative of the composite matrix at the basepoint.
  Matrix deriv(int k) const { return gschw::deriv(matrix, k); }
};

CompositeField composite_field(const Jet& fjet);

// f'''/f' - (3/2)(f''/f')^2 from the jet derivatives.
double schwarzian_direct(const Jet& fjet);
// The Schwarzian as a jet in t, order fjet.order() - 3.
Jet schwarzian_jet(const Jet& fjet);
// tr(f''^2) with f the composite matrix.
double schwarzian_via_trace(const Jet& fjet);

struct Residual {
  std::string name;
  double value = 0.0;
};

struct IdentityReport {
  std::vector<Residual> residuals;
  double max() const;
  double get(const std::string& name) const;
};

// Residuals of the trace and matrix identities satisfied by the composite
// field for any f. Each residual is normalized by the largest intermediate
// magnitude (floored at 1). Needs a jet of order >= 6.
IdentityReport identity_suite(const Jet& fjet);

// Scale-aware trace pairing helpers shared with the gauge module.
struct ScaledValue {
  double value = 0.0;
  double scale = 0.0;
};
ScaledValue trace_product(const Matrix& x, const Matrix& y);

void require_noncritical(const Jet& fdot);

}  // namespace gschw

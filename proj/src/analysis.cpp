#include "qta/analysis.hpp"

#include <cmath>

namespace qta::analysis {

using linalg::ComplexMatrix;
using linalg::DensityMatrix;

const char* to_string(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::Separable:
      return "Separable";
    case EntanglementClass::BoundEntangled:
      return "BoundEntangled";
    case EntanglementClass::FreeEntangled:
      return "FreeEntangled";
  }
  return "unknown";
}

PptReport ppt_report(const linalg::DensityMatrix& rho) {
  if (rho.dims().size() != 2) {
    throw std::invalid_argument("PPT test requires bipartite dims");
  }
  PptReport report;
  report.spectrum = linalg::eig_hermitian(linalg::partial_transpose(rho, 1));
  report.min_eigenvalue = report.spectrum.front();
  report.is_ppt = report.min_eigenvalue >= -linalg::kPsdTol;
  return report;
}

EntanglementClass classify_sigma_alpha(states::AlphaParam alpha) {
  const double a = alpha.value();
  EntanglementClass cls;
  if (a <= 3.0) {
    cls = EntanglementClass::Separable;
  } else if (a <= 4.0) {
    cls = EntanglementClass::BoundEntangled;
  } else {
    cls = EntanglementClass::FreeEntangled;
  }

  const bool ppt = ppt_report(states::sigma_alpha(alpha)).is_ppt;
  const bool expect_ppt = cls != EntanglementClass::FreeEntangled;
  if (ppt != expect_ppt) {
    throw invariant_error("sigma_alpha classification disagrees with PPT test");
  }
  return cls;
}

double projection_witness(const linalg::DensityMatrix& rho) {
  if (rho.dims() != std::vector<int>{3, 3}) {
    throw std::invalid_argument("projection witness requires a [3,3] state");
  }
  // (|0><0| + |1><1|) on each side: keep product-basis rows/cols with both
  // indices below 2, reindexed as a 2x2 bipartite matrix.
  ComplexMatrix block(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          block(2 * i + j, 2 * k + l) = rho.matrix()(3 * i + j, 3 * k + l);
        }
      }
    }
  }
  const double projected_trace = block.trace().real();
  if (projected_trace < 1e-12) {
    throw std::invalid_argument(
        "state has no support on the projected 2x2 subspace");
  }
  block *= Complex{1.0 / projected_trace, 0.0};
  const DensityMatrix projected(std::move(block), {2, 2});
  return linalg::eig_hermitian(linalg::partial_transpose(projected, 1)).front();
}

double decomposition_residual(states::AlphaParam alpha) {
  const double a = alpha.value();
  ComplexMatrix mix = Complex{6.0 / 7.0, 0.0} * states::rho_one().matrix() +
                      Complex{(a - 2.0) / 7.0, 0.0} * states::sigma_plus().matrix() +
                      Complex{(3.0 - a) / 7.0, 0.0} * states::sigma_minus().matrix();
  return linalg::max_abs_diff(states::sigma_alpha(alpha).matrix(), mix);
}

double sigma_alpha_ppt_boundary(double alpha_tol) {
  if (alpha_tol <= 0.0) throw std::invalid_argument("tolerance must be > 0");
  auto min_pt_eig = [](double a) {
    return ppt_report(states::sigma_alpha(states::AlphaParam(a))).min_eigenvalue;
  };
  double lo = 2.0;
  double hi = 5.0;
  if (!(min_pt_eig(lo) > 0.0 && min_pt_eig(hi) < 0.0)) {
    throw invariant_error("PPT boundary bracket lost its sign change");
  }
  while (hi - lo > alpha_tol) {
    const double mid = 0.5 * (lo + hi);
    if (min_pt_eig(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qta::analysis

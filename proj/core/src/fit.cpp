#include "thetamom/fit.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "thetamom/error.hpp"

namespace thetamom {

FitResult fit_power_log(std::span<const double> x, std::span<const double> value,
                        const PowerLogModel& model) {
  if (x.size() != value.size()) throw InvalidArgument("fit: x and value lengths differ");
  const std::size_t n = x.size();
  if (n < 3) throw InvalidArgument("fit: need at least 3 points");

  const bool fit_power = !model.fixed_power.has_value();
  const bool fit_log = !model.fixed_log_power.has_value();
  const bool uses_log = fit_log || *model.fixed_log_power != 0.0;
  const int cols = 1 + (fit_power ? 1 : 0) + (fit_log ? 1 : 0);

  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), cols);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!(value[i] > 0.0) || !std::isfinite(value[i])) throw InvalidArgument("fit: values must be positive and finite");
    if (!(x[i] > 0.0)) throw InvalidArgument("fit: abscissae must be positive");
    if (uses_log && !(x[i] > 1.0)) throw InvalidArgument("fit: log factor needs x > 1");
    const double lx = std::log(x[i]);
    const double llx = uses_log ? std::log(lx) : 0.0;
    double target = std::log(value[i]);
    if (!fit_power) target -= *model.fixed_power * lx;
    if (!fit_log) target -= *model.fixed_log_power * llx;

    const auto row = static_cast<Eigen::Index>(i);
    int c = 0;
    a(row, c++) = 1.0;
    if (fit_power) a(row, c++) = lx;
    if (fit_log) a(row, c++) = llx;
    rhs(row) = target;
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < cols) throw InvalidArgument("fit: degenerate design (abscissae do not span the model)");
  const Eigen::VectorXd coef = qr.solve(rhs);
  const Eigen::VectorXd resid = a * coef - rhs;

  FitResult out;
  int c = 0;
  out.constant = std::exp(coef(c++));
  out.power = fit_power ? coef(c++) : *model.fixed_power;
  out.log_power = fit_log ? coef(c++) : *model.fixed_log_power;
  out.rms_residual = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
  out.n_points = n;
  return out;
}

}  // namespace thetamom

#include "latosc/gridops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace latosc {

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.count)
    throw std::invalid_argument("GridFunction: value count does not match the grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: values must be finite");
}

GridFunction GridFunction::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return GridFunction(grid_, std::move(v));
}

namespace {

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Grid grid_from_points(const std::vector<double>& pts) {
  if (pts.size() < 2) throw std::invalid_argument("grid: need at least two points");
  const double step = pts[1] - pts[0];
  int step2;
  if (std::fabs(step - 1.0) < 1e-12)
    step2 = 2;
  else if (std::fabs(step - 0.5) < 1e-12)
    step2 = 1;
  else
    throw std::invalid_argument("grid: step must be 1 or 1/2");
  return Grid{pts[0], static_cast<int>(pts.size()), step2};
}

}  // namespace

std::string GridFunction::to_csv() const {
  std::string out = "s,value\n";
  for (int i = 0; i < size(); ++i) {
    out += format17(grid_.point(i));
    out += ',';
    out += format17(values_[i]);
    out += '\n';
  }
  return out;
}

GridFunction GridFunction::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "s,value")
    throw std::invalid_argument("grid csv: missing 's,value' header");
  std::vector<double> pts, vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("grid csv: malformed row '" + line + "'");
    pts.push_back(std::stod(line.substr(0, comma)));
    vals.push_back(std::stod(line.substr(comma + 1)));
  }
  return GridFunction(grid_from_points(pts), std::move(vals));
}

std::string GridFunction::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int i = 0; i < size(); ++i)
    arr.push_back({{"s", grid_.point(i)}, {"value", values_[i]}});
  return arr.dump();
}

GridFunction GridFunction::from_json(const std::string& text) {
  const auto arr = nlohmann::json::parse(text);
  std::vector<double> pts, vals;
  for (const auto& item : arr) {
    pts.push_back(item.at("s").get<double>());
    vals.push_back(item.at("value").get<double>());
  }
  return GridFunction(grid_from_points(pts), std::move(vals));
}

ShiftOperator ShiftOperator::identity() { return constant(1.0); }

ShiftOperator ShiftOperator::constant(double c) {
  return term(0.0, [c](double) { return c; });
}

ShiftOperator ShiftOperator::term(double shift, Coefficient c) {
  const double doubled = 2.0 * shift;
  const double rounded = std::round(doubled);
  if (std::fabs(doubled - rounded) > 1e-9)
    throw std::invalid_argument("ShiftOperator: shift must be a multiple of 1/2");
  ShiftOperator op;
  op.insert(static_cast<int>(rounded), std::move(c));
  return op;
}

void ShiftOperator::insert(int shift2, Coefficient c) {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), shift2,
                             [](const Term& t, int k) { return t.shift2 < k; });
  if (it != terms_.end() && it->shift2 == shift2) {
    Coefficient old = std::move(it->coeff);
    it->coeff = [old = std::move(old), c = std::move(c)](double s) { return old(s) + c(s); };
  } else {
    terms_.insert(it, Term{shift2, std::move(c)});
  }
}

double ShiftOperator::coefficient(double shift, double s) const {
  const int shift2 = static_cast<int>(std::round(2.0 * shift));
  for (const auto& t : terms_)
    if (t.shift2 == shift2) return t.coeff(s);
  return 0.0;
}

GridFunction ShiftOperator::apply(const GridFunction& f) const {
  const Grid& g = f.grid();
  // Offsets in grid indices; every shift must be commensurate with the step.
  std::vector<std::pair<int, const Coefficient*>> offsets;
  offsets.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (t.shift2 % g.step2 != 0)
      throw std::domain_error("ShiftOperator::apply: shift " + std::to_string(0.5 * t.shift2) +
                              " is not commensurate with grid step " + std::to_string(g.step()));
    offsets.emplace_back(t.shift2 / g.step2, &t.coeff);
  }
  std::vector<double> out(g.count, 0.0);
  for (int i = 0; i < g.count; ++i) {
    const double s = g.point(i);
    double acc = 0.0;
    for (const auto& [off, coeff] : offsets) {
      const int j = i + off;
      if (j < 0 || j >= g.count) continue;  // zero padding; coefficient not evaluated
      acc += (*coeff)(s)*f[j];
    }
    out[i] = acc;
  }
  return GridFunction(g, std::move(out));
}

ShiftOperator compose(const ShiftOperator& a, const ShiftOperator& b) {
  ShiftOperator out;
  for (const auto& ta : a.terms_) {
    const double ka = 0.5 * ta.shift2;
    for (const auto& tb : b.terms_) {
      auto ca = ta.coeff;
      auto cb = tb.coeff;
      out.insert(ta.shift2 + tb.shift2,
                 [ca = std::move(ca), cb = std::move(cb), ka](double s) { return ca(s) * cb(s + ka); });
    }
  }
  return out;
}

ShiftOperator add(const ShiftOperator& a, const ShiftOperator& b) {
  ShiftOperator out = a;
  for (const auto& t : b.terms_) out.insert(t.shift2, t.coeff);
  return out;
}

ShiftOperator scale(const ShiftOperator& a, double c) {
  ShiftOperator out;
  for (const auto& t : a.terms_) {
    auto f = t.coeff;
    out.insert(t.shift2, [f = std::move(f), c](double s) { return c * f(s); });
  }
  return out;
}

ShiftOperator commutator(const ShiftOperator& a, const ShiftOperator& b) {
  return add(compose(a, b), scale(compose(b, a), -1.0));
}

ShiftOperator varsigma_commutator(const ShiftOperator& a, const ShiftOperator& b, double varsigma) {
  return add(compose(a, b), scale(compose(b, a), -varsigma));
}

double inner_product(const GridFunction& f, const GridFunction& g) {
  if (!f.grid().same_as(g.grid())) throw std::invalid_argument("inner_product: grid mismatch");
  if (f.grid().step2 != 2) throw std::invalid_argument("inner_product: orthogonality sums use step 1");
  long double sum = 0.0L;
  for (int i = 0; i < f.size(); ++i) sum += static_cast<long double>(f[i]) * g[i];
  return static_cast<double>(sum);
}

double adjoint_defect(const ShiftOperator& a, const ShiftOperator& b,
                      std::span<const GridFunction> basis) {
  double worst = 0.0;
  std::vector<GridFunction> af, bf;
  af.reserve(basis.size());
  bf.reserve(basis.size());
  for (const auto& f : basis) {
    af.push_back(a.apply(f));
    bf.push_back(b.apply(f));
  }
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j)
      worst = std::max(worst,
                       std::fabs(inner_product(af[i], basis[j]) - inner_product(basis[i], bf[j])));
  return worst;
}

double max_abs_diff(const GridFunction& f, const GridFunction& g, int margin) {
  if (!f.grid().same_as(g.grid())) throw std::invalid_argument("max_abs_diff: grid mismatch");
  double worst = 0.0;
  for (int i = f.grid().measure_begin(margin); i < f.grid().measure_end(margin); ++i)
    worst = std::max(worst, std::fabs(f[i] - g[i]));
  return worst;
}

double operator_difference_residual(const ShiftOperator& a, const ShiftOperator& b,
                                    std::span<const GridFunction> basis, int margin) {
  double worst = 0.0;
  for (const auto& f : basis) worst = std::max(worst, max_abs_diff(a.apply(f), b.apply(f), margin));
  return worst;
}

}  // namespace latosc

#ifndef LATOSC_GRIDOPS_HPP
#define LATOSC_GRIDOPS_HPP

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace latosc {

// Evenly spaced lattice window. step2 is twice the step, so half-integer
// grids are represented exactly (step2 = 1 for step 1/2, step2 = 2 for
// step 1). truncated_right marks windows cut off by a tail bound rather
// than a natural boundary of the support.
struct Grid {
  double start = 0.0;
  int count = 0;
  int step2 = 2;
  bool truncated_right = false;

  double step() const { return 0.5 * step2; }
  double point(int i) const { return start + 0.5 * step2 * i; }
  bool same_as(const Grid& other) const {
    return start == other.start && count == other.count && step2 == other.step2;
  }
  // First/last index of the measurement window: `margin` points are dropped
  // next to a truncated edge, none next to a natural boundary.
  int measure_begin(int /*margin*/ = 2) const { return 0; }
  int measure_end(int margin = 2) const { return truncated_right ? count - margin : count; }
};

class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(Grid grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](int i) const { return values_[i]; }
  double& operator[](int i) { return values_[i]; }
  int size() const { return static_cast<int>(values_.size()); }

  GridFunction scaled(double c) const;

  // CSV with header "s,value"; 17 significant digits (bit-exact round trip).
  std::string to_csv() const;
  static GridFunction from_csv(const std::string& text);
  // JSON array of {"s": ..., "value": ...}.
  std::string to_json() const;
  static GridFunction from_json(const std::string& text);

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Finite sum of coefficient x shift terms: sum_t c_t(s) e^{k_t d/ds} with
// half-integer shifts k_t. Coefficients are closed-form descriptors, so
// composition shifts arguments exactly.
class ShiftOperator {
 public:
  using Coefficient = std::function<double(double)>;

  ShiftOperator() = default;

  static ShiftOperator identity();
  static ShiftOperator constant(double c);
  // One term c(s) e^{shift d/ds}; shift must be a multiple of 1/2.
  static ShiftOperator term(double shift, Coefficient c);

  struct Term {
    int shift2;  // twice the shift
    Coefficient coeff;
  };
  const std::vector<Term>& terms() const { return terms_; }

  // Coefficient of e^{shift d/ds} evaluated at s (0 when no such term).
  double coefficient(double shift, double s) const;

  GridFunction apply(const GridFunction& f) const;

 private:
  friend ShiftOperator compose(const ShiftOperator&, const ShiftOperator&);
  friend ShiftOperator add(const ShiftOperator&, const ShiftOperator&);
  friend ShiftOperator scale(const ShiftOperator&, double);
  void insert(int shift2, Coefficient c);

  std::vector<Term> terms_;  // sorted by shift2
};

ShiftOperator compose(const ShiftOperator& a, const ShiftOperator& b);
ShiftOperator add(const ShiftOperator& a, const ShiftOperator& b);
ShiftOperator scale(const ShiftOperator& a, double c);
ShiftOperator commutator(const ShiftOperator& a, const ShiftOperator& b);
// a b - varsigma b a.
ShiftOperator varsigma_commutator(const ShiftOperator& a, const ShiftOperator& b, double varsigma);

// Sum_s f(s) g(s) over a common step-1 window.
double inner_product(const GridFunction& f, const GridFunction& g);

// max over basis pairs of |<A f, g> - <f, B g>|.
double adjoint_defect(const ShiftOperator& a, const ShiftOperator& b,
                      std::span<const GridFunction> basis);

// max_i |f_i - g_i| over the measurement window (margin next to truncated
// edges only).
double max_abs_diff(const GridFunction& f, const GridFunction& g, int margin = 2);

// ||(A - B) f||_inf over the measurement window, maximized over the basis.
double operator_difference_residual(const ShiftOperator& a, const ShiftOperator& b,
                                    std::span<const GridFunction> basis, int margin = 2);

}  // namespace latosc

#endif  // LATOSC_GRIDOPS_HPP

#pragma once

// Polynomial maps on n+ x n- as expression DAGs over matrix-valued nodes.
// Evaluation is forward mode: every node returns its value and its derivative
// along a direction (dx, dy), so directional derivatives are exact.

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace nearhol {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;

class PolyMap {
public:
    struct Jet {
        cmat value;
        cmat deriv;
    };
    using Linear = std::function<cmat(const cmat&)>;

    PolyMap();  ///< the scalar constant 0

    static PolyMap constant(const cmat& c);
    static PolyMap scalar(cplx c);
    static PolyMap coord_x(int rows, int cols);
    static PolyMap coord_y(int rows, int cols);
    static PolyMap det(const PolyMap& a);
    static PolyMap pfaffian(const PolyMap& a);
    /// Nonnegative integer power of a 1x1 map.
    static PolyMap pow(const PolyMap& a, int k);
    /// Linear map applied to a node; `f` must be complex-linear.
    static PolyMap linear(const PolyMap& a, Linear f, int rows, int cols);

    friend PolyMap operator+(const PolyMap& a, const PolyMap& b);
    friend PolyMap operator-(const PolyMap& a, const PolyMap& b);
    /// Matrix product; a 1x1 factor acts as a scalar.
    friend PolyMap operator*(const PolyMap& a, const PolyMap& b);
    friend PolyMap operator*(cplx s, const PolyMap& a);

    [[nodiscard]] int rows() const;
    [[nodiscard]] int cols() const;
    [[nodiscard]] bool depends_on_x() const;
    [[nodiscard]] bool depends_on_y() const;

    [[nodiscard]] cmat eval(const cmat& x, const cmat& y) const;
    [[nodiscard]] Jet jet(const cmat& x, const cmat& y, const cmat& dx, const cmat& dy) const;
    /// d/dt p(x + t dx, y + t dy) at t = 0.
    [[nodiscard]] cmat derivative(const cmat& x, const cmat& y, const cmat& dx, const cmat& dy) const {
        return jet(x, y, dx, dy).deriv;
    }

    struct Node;

private:
    explicit PolyMap(std::shared_ptr<const Node> n) : root_(std::move(n)) {}
    std::shared_ptr<const Node> root_;
};

/// Pfaffian of an antisymmetric matrix (pivoted skew elimination).
cplx pfaffian(cmat a);

/// adj(A), well defined for singular A.
cmat adjugate(const cmat& a);

} // namespace nearhol

#pragma once

// Matrix models of the classical Jordan pairs (types I, II, III).
//
//   I(p,q):  n+ = p x q matrices, n- = q x p matrices
//   II(n):   n+ = n- = antisymmetric n x n matrices
//   III(n):  n+ = n- = symmetric n x n matrices
//
// {x,y,z} = xyz + zyx, Q_x y = xyx, B(x,y)z = (1 - xy) z (1 - yx), and the
// conjugation z -> zbar is the conjugate transpose. K acts through pairs (A, D)
// of unitaries by z -> A z D^*, y -> D y A^*; for types II and III D = conj(A).
// The Cartan of l is identified with the epsilon-basis of the root data by
// eps_i = A_ii (i <= p) and eps_{p+j} = D_{q+1-j,q+1-j} for type I, and by
// eps_i = A_ii for types II and III. With this identification the frame is
// e_i = E_ii (types I, III) or the i-th 2x2 block [[0,1],[-1,0]] (type II),
// e_i has root gamma_i, and the Jordan minors are leading principal minors
// (Pfaffians of leading 2i x 2i blocks for type II).

#include "nearhol/decomp.hpp"
#include "nearhol/polymap.hpp"
#include "nearhol/random.hpp"

#include <variant>

namespace nearhol {

enum class Side { Plus, Minus };

inline Side opposite(Side s) { return s == Side::Plus ? Side::Minus : Side::Plus; }

struct JordanPoint {
    cmat value;
    Side side = Side::Plus;
};

/// Element (A, D) of the complexified l: T z = A z - z D on n+, T y = D y - y A on n-.
struct LieElement {
    cmat A, D;
};

/// Element (A, D) of K: z -> A z D^*, y -> D y A^*.
struct KElement {
    cmat A, D;
};

class MatrixModel {
public:
    /// Throws UnsupportedError for type IV and the exceptional spaces.
    explicit MatrixModel(const HermitianType& type);

    [[nodiscard]] const HermitianType& type() const { return type_; }
    [[nodiscard]] const StructureConstants& constants() const { return constants_; }
    [[nodiscard]] int rank() const { return constants_.r; }
    [[nodiscard]] int dim() const { return constants_.n; }
    [[nodiscard]] int rows(Side s) const { return s == Side::Plus ? rows_ : cols_; }
    [[nodiscard]] int cols(Side s) const { return s == Side::Plus ? cols_ : rows_; }
    /// Size of the square matrices whose determinant defines Delta.
    [[nodiscard]] int det_size() const { return rows_; }

    /// Validated construction (shape and symmetry, tolerance 1e-12).
    [[nodiscard]] JordanPoint point(Side side, const cmat& value) const;
    [[nodiscard]] JordanPoint plus(const cmat& value) const { return point(Side::Plus, value); }
    [[nodiscard]] JordanPoint minus(const cmat& value) const { return point(Side::Minus, value); }
    void check(const JordanPoint& x) const;

    [[nodiscard]] JordanPoint zero(Side side) const;
    [[nodiscard]] JordanPoint conj(const JordanPoint& z) const;

    /// Orthonormal basis for the trace form (v|w) = tr(v w^*).
    [[nodiscard]] const std::vector<cmat>& basis(Side side) const {
        return side == Side::Plus ? basis_plus_ : basis_minus_;
    }
    [[nodiscard]] Eigen::VectorXcd coords(const JordanPoint& z) const;
    [[nodiscard]] JordanPoint from_coords(Side side, const Eigen::VectorXcd& c) const;

    /// Frame tripotent e_i (0-based) in n+.
    [[nodiscard]] const JordanPoint& frame(int i) const { return frame_.at(static_cast<std::size_t>(i)); }
    /// e_1 + ... + e_i (i frame elements).
    [[nodiscard]] JordanPoint epsilon(int i) const;
    /// sum t_i e_i (Plus) or sum t_i ebar_i (Minus).
    [[nodiscard]] JordanPoint diag(Side side, const std::vector<cplx>& t) const;
    [[nodiscard]] JordanPoint diag(Side side, const std::vector<double>& t) const;

    [[nodiscard]] JordanPoint apply(const KElement& k, const JordanPoint& z) const;
    [[nodiscard]] JordanPoint apply(const LieElement& T, const JordanPoint& z) const;

    [[nodiscard]] KElement identity_k() const;
    /// Haar-distributed element of K (QR of Gaussian matrices with phase correction).
    [[nodiscard]] KElement random_k(Rng& rng) const;
    /// Cartan element with eps_i(T) = values[i].
    [[nodiscard]] LieElement cartan_element(const std::vector<cplx>& values) const;
    /// Uniformly random complex element of l.
    [[nodiscard]] LieElement random_l(Rng& rng) const;
    /// D_{z,w} as an element of l.
    [[nodiscard]] LieElement dop_element(const JordanPoint& z, const JordanPoint& w) const;

    /// Entries with independent standard complex Gaussian coordinates times `scale`.
    [[nodiscard]] JordanPoint random(Side side, Rng& rng, double scale = 1.0) const;

private:
    cmat symmetrize(const cmat& m) const;

    HermitianType type_;
    StructureConstants constants_;
    int rows_ = 1, cols_ = 1;
    std::vector<cmat> basis_plus_, basis_minus_;
    std::vector<JordanPoint> frame_;
};

/// {x, y, z}.
JordanPoint triple(const JordanPoint& x, const JordanPoint& y, const JordanPoint& z);
/// Q_x y = xyx.
JordanPoint quadratic(const JordanPoint& x, const JordanPoint& y);
/// D_{x,y} z.
JordanPoint dop(const JordanPoint& x, const JordanPoint& y, const JordanPoint& z);
/// B(x,y) z.
JordanPoint bergman_apply(const JordanPoint& x, const JordanPoint& y, const JordanPoint& z);

/// Matrix of B(x,y) in the orthonormal basis of x's side.
cmat bergman(const MatrixModel& model, const JordanPoint& x, const JordanPoint& y);

/// Jordan pair determinant; Det B(x,y) = Delta(x,y)^g.
cplx delta(const MatrixModel& model, const JordanPoint& x, const JordanPoint& y);

/// x^y = B(x,y)^{-1}(x - Q_x y). Throws SingularityError when B(x,y) is singular.
JordanPoint quasi_inverse(const MatrixModel& model, const JordanPoint& x, const JordanPoint& y);

/// q(z) = zbar^{-z}.
JordanPoint qmap(const MatrixModel& model, const JordanPoint& z);

/// Psi(z) = 2g log Delta(z, -zbar).
double kahler_potential(const MatrixModel& model, const JordanPoint& z);

struct PolarDecomposition {
    KElement k;
    std::vector<double> t;  ///< descending
};

/// z = k z_t with z_t = sum t_i e_i.
PolarDecomposition polar_decompose(const MatrixModel& model, const JordanPoint& z);

/// Delta as a polynomial map in the expressions x (n+ shaped) and y (n- shaped).
PolyMap delta_poly(const MatrixModel& model, const PolyMap& x, const PolyMap& y);

/// Delta_i(y) = Delta(eps_i, epsbar_i - y), i = 1..r.
cplx minor(const MatrixModel& model, const JordanPoint& y, int i);
PolyMap minor_poly(const MatrixModel& model, int i);

/// p_m = Delta_1^{m_1-m_2} ... Delta_r^{m_r}, constant along n+.
PolyMap minor_poly(const MatrixModel& model, const Partition& m);

/// Degrees of t -> p(0, sum t_i ebar_i) in each t_i. Throws BudgetError above `budget`.
std::vector<int> diagonal_degrees(const MatrixModel& model, const PolyMap& p, int budget = 24);

/// f_p(z) = p(z, q(z)).
cmat eval_section(const MatrixModel& model, const PolyMap& p, const JordanPoint& z);

using Generator = std::variant<JordanPoint, LieElement>;

/// d rho(T) applied to a fiber vector. Line bundles act by k lambda_1(T), the
/// cotangent bundle by the adjoint action on n-.
cmat fiber_action(const MatrixModel& model, const BundleSpec& bundle, const LieElement& T, const cmat& vec);

/// d pi(X) f_p at z for X in n+ (Plus point), l, or n- (Minus point).
cmat uC_action(const MatrixModel& model, const BundleSpec& bundle, const Generator& X, const PolyMap& p,
               const JordanPoint& z);

struct QmapResiduals {
    double holomorphic = 0.0;  ///< (-d_v - dbar_{Q_zbar v}) q
    double torus = 0.0;        ///< (-d_{Tz} - dbar_{T zbar}) q + T q
    double antiholomorphic = 0.0;  ///< (-d_{Q_z w} - dbar_w) q + w - {q, z, w}
    [[nodiscard]] double max() const { return std::max({holomorphic, torus, antiholomorphic}); }
};

/// Central finite differences (step h) of the three q-map identities.
QmapResiduals verify_qmap_identities(const MatrixModel& model, const JordanPoint& z, const JordanPoint& v,
                                     const LieElement& T, const JordanPoint& w, double h = 1e-5);

/// rho(B(z, -zbar)^{-1/2}) applied to a fiber vector (1x1 for line bundles, n- shaped
/// for the cotangent bundle).
cmat bergman_bundle_action(const MatrixModel& model, const BundleSpec& bundle, const JordanPoint& z,
                           const cmat& vec);

/// Fiber vector of the highest weight of the bundle (1 for line bundles, ebar_r-type
/// weight vector of weight -alpha_1 for the cotangent bundle).
cmat highest_fiber_vector(const MatrixModel& model, const BundleSpec& bundle);

/// Squared fiber norm (trace form).
double fiber_norm2(const cmat& v);

} // namespace nearhol

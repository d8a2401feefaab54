#pragma once

#include <complex>
#include <cstdlib>

namespace htn::geometry {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Point strictly inside the open unit disk (Poincare disk coordinate).
struct DiskPoint {
    double re = 0.0;
    double im = 0.0;

    Complex z() const { return {re, im}; }
    double abs() const { return std::abs(z()); }

    // Throws std::domain_error if |z| >= 1.
    static DiskPoint from(Complex z);
};

// Orientation-preserving disk automorphism
//
//     z  ->  e^{i theta} (w + z) / (1 + conj(w) z),  |w| < 1.
//
// Stored as an SU(1,1) matrix [[u, v], [conj(v), conj(u)]] with
// |u|^2 - |v|^2 = 1, so that composition is plain matrix multiplication
// followed by renormalization. The (w, theta) pair is a derived view.
class MobiusTransform {
  public:
    MobiusTransform() : u_(1.0, 0.0), v_(0.0, 0.0) {}

    static MobiusTransform from_shift_rotation(DiskPoint w, double theta);
    // Raw SU(1,1) entries; normalizes, throws if |u| <= |v|.
    static MobiusTransform from_su11(Complex u, Complex v);

    DiskPoint apply(DiskPoint z) const;
    // (*this) after `inner`: apply(z) == this->apply(inner.apply(z)).
    MobiusTransform compose(const MobiusTransform& inner) const;
    MobiusTransform inverse() const;

    DiskPoint shift() const;    // w
    double rotation() const;    // theta in [0, 2pi)

    Complex u() const { return u_; }
    Complex v() const { return v_; }

  private:
    MobiusTransform(Complex u, Complex v) : u_(u), v_(v) {}
    void normalize();

    Complex u_, v_;
};

// Geodesic of the disk model: a diameter, or a circle orthogonal to the
// unit circle (|center|^2 = 1 + radius^2).
struct Geodesic {
    enum class Kind { diameter, circle };

    Kind kind = Kind::diameter;
    double angle = 0.0;    // diameter direction
    Complex center{};      // circle form
    double radius = 0.0;

    // Geodesic through two distinct points of the open disk.
    static Geodesic through(DiskPoint a, DiskPoint b);
};

// Schlafli {n,k} plus the AdS radius. Hyperbolic iff f() > 0.
struct TilingParams {
    int n = 5;
    int k = 4;
    double alpha = 1.0;

    int f() const { return n * k - 2 * (n + k); }
};

DiskPoint mobius_apply(const MobiusTransform& t, DiskPoint z);

// Geodesic distance in units of alpha: 2 alpha artanh |(z1-z2)/(1-conj(z1) z2)|.
double hyperbolic_distance(DiskPoint z1, DiskPoint z2, double alpha = 1.0);

// Edge length s/alpha = 2 arcosh(cos(pi/n) / sin(pi/k)).
// Throws std::domain_error when the tiling is not hyperbolic.
double edge_length(const TilingParams& p);

// Circle inversion in (or mirror reflection across) the geodesic.
DiskPoint reflect(const Geodesic& g, DiskPoint z);

// Hyperbolic center-to-vertex distance of a tile: cosh r = cot(pi/n) cot(pi/k).
double tile_circumradius(const TilingParams& p);

}  // namespace htn::geometry

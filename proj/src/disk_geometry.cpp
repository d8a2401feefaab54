#include "htn/disk_geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace htn::geometry {

DiskPoint DiskPoint::from(Complex z) {
    if (std::abs(z) >= 1.0)
        throw std::domain_error("DiskPoint: |z| >= 1");
    return {z.real(), z.imag()};
}

MobiusTransform MobiusTransform::from_shift_rotation(DiskPoint w, double theta) {
    if (w.abs() >= 1.0)
        throw std::domain_error("MobiusTransform: |w| >= 1");
    const Complex half = std::polar(1.0, theta / 2.0);
    MobiusTransform t(half, half * w.z());
    t.normalize();
    return t;
}

MobiusTransform MobiusTransform::from_su11(Complex u, Complex v) {
    if (std::norm(u) <= std::norm(v))
        throw std::domain_error("MobiusTransform: |u| <= |v| does not map the disk to itself");
    MobiusTransform t(u, v);
    t.normalize();
    return t;
}

void MobiusTransform::normalize() {
    const double det = std::norm(u_) - std::norm(v_);
    if (det <= 0.0)
        throw std::domain_error("MobiusTransform: non-positive determinant");
    const double s = std::sqrt(det);
    u_ /= s;
    v_ /= s;
}

DiskPoint MobiusTransform::apply(DiskPoint z) const {
    const Complex num = u_ * z.z() + v_;
    const Complex den = std::conj(v_) * z.z() + std::conj(u_);
    return DiskPoint::from(num / den);
}

MobiusTransform MobiusTransform::compose(const MobiusTransform& inner) const {
    MobiusTransform t(u_ * inner.u_ + v_ * std::conj(inner.v_),
                      u_ * inner.v_ + v_ * std::conj(inner.u_));
    t.normalize();
    return t;
}

MobiusTransform MobiusTransform::inverse() const {
    return MobiusTransform(std::conj(u_), -v_);
}

DiskPoint MobiusTransform::shift() const {
    return DiskPoint::from(v_ / u_);
}

double MobiusTransform::rotation() const {
    double theta = 2.0 * std::arg(u_);
    theta = std::fmod(theta, 2.0 * kPi);
    if (theta < 0.0)
        theta += 2.0 * kPi;
    return theta;
}

DiskPoint mobius_apply(const MobiusTransform& t, DiskPoint z) {
    return t.apply(z);
}

double hyperbolic_distance(DiskPoint z1, DiskPoint z2, double alpha) {
    const Complex num = z1.z() - z2.z();
    const Complex den = 1.0 - std::conj(z1.z()) * z2.z();
    const double r = std::abs(num / den);
    return 2.0 * alpha * std::atanh(r);
}

double edge_length(const TilingParams& p) {
    if (p.n < 3 || p.k < 3)
        throw std::domain_error("edge_length: n, k must be >= 3");
    if (p.f() <= 0)
        throw std::domain_error("edge_length: {n,k} is not hyperbolic");
    return 2.0 * std::acosh(std::cos(kPi / p.n) / std::sin(kPi / p.k));
}

double tile_circumradius(const TilingParams& p) {
    if (p.n < 3 || p.k < 3 || p.f() <= 0)
        throw std::domain_error("tile_circumradius: {n,k} is not hyperbolic");
    return std::acosh(1.0 / (std::tan(kPi / p.n) * std::tan(kPi / p.k)));
}

Geodesic Geodesic::through(DiskPoint a, DiskPoint b) {
    const double cross = a.re * b.im - a.im * b.re;
    const double scale = std::max(1.0, std::max(a.abs(), b.abs()));
    if (std::abs(cross) < 1e-14 * scale) {
        // Collinear with the origin: a diameter.
        const Complex dir = b.z() - a.z();
        if (std::abs(dir) < 1e-14)
            throw std::invalid_argument("Geodesic::through: coincident points");
        Geodesic g;
        g.kind = Kind::diameter;
        g.angle = std::atan2(dir.imag(), dir.real());
        return g;
    }
    // Solve 2 Re(conj(c) p) = |p|^2 + 1 for p in {a, b}.
    const double ra = (std::norm(a.z()) + 1.0) / 2.0;
    const double rb = (std::norm(b.z()) + 1.0) / 2.0;
    const double cx = (ra * b.im - rb * a.im) / cross;
    const double cy = (a.re * rb - b.re * ra) / cross;
    Geodesic g;
    g.kind = Kind::circle;
    g.center = {cx, cy};
    g.radius = std::sqrt(std::norm(g.center) - 1.0);
    return g;
}

DiskPoint reflect(const Geodesic& g, DiskPoint z) {
    if (g.kind == Geodesic::Kind::diameter) {
        const Complex w = std::polar(1.0, 2.0 * g.angle) * std::conj(z.z());
        return {w.real(), w.imag()};
    }
    const Complex d = z.z() - g.center;
    const Complex w = g.center + (g.radius * g.radius) / std::conj(d);
    return {w.real(), w.imag()};
}

}  // namespace htn::geometry

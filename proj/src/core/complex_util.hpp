#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

namespace cantorlab {

using cplx = std::complex<double>;
using json = nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

/// Closed disk in the complex plane.
struct Disk {
    cplx center{0.0, 0.0};
    double radius = 0.0;

    bool contains(cplx z, double slack = 0.0) const {
        return std::abs(z - center) <= radius + slack;
    }
    bool contains_disk(const Disk& d, double slack = 0.0) const {
        return std::abs(d.center - center) + d.radius <= radius + slack;
    }
    /// Signed margin of containment of d in this disk (positive = strictly inside).
    double containment_margin(const Disk& d) const {
        return radius - (std::abs(d.center - center) + d.radius);
    }
    /// Signed gap between two disks (positive = disjoint).
    double gap(const Disk& d) const {
        return std::abs(d.center - center) - radius - d.radius;
    }
    bool intersects(const Disk& d) const { return gap(d) <= 0.0; }
};

inline json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2) throw nlohmann::json::type_error::create(302, "expected [re, im]", &j);
    return cplx(j[0].get<double>(), j[1].get<double>());
}

inline json disk_to_json(const Disk& d) {
    return json{{"center", cplx_to_json(d.center)}, {"radius", d.radius}};
}

inline Disk disk_from_json(const json& j) {
    return Disk{cplx_from_json(j.at("center")), j.at("radius").get<double>()};
}

/// Fixed decimal formatting so outputs are byte-stable for a given build.
inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt_cplx(cplx z) {
    return fmt_double(z.real()) + "," + fmt_double(z.imag());
}

/// Evaluation grid: n x n lattice over the bounding square, kept if inside the disk.
/// The disk center is always included so the grid is never empty.
inline std::vector<cplx> disk_grid(const Disk& d, int n) {
    std::vector<cplx> pts;
    pts.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double x = -1.0 + 2.0 * (i + 0.5) / n;
            double y = -1.0 + 2.0 * (j + 0.5) / n;
            cplx z = d.center + d.radius * cplx(x, y);
            if (d.contains(z)) pts.push_back(z);
        }
    }
    if (pts.empty()) pts.push_back(d.center);
    return pts;
}

/// FNV-1a over a byte string; used to stamp outputs with a config fingerprint.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace cantorlab

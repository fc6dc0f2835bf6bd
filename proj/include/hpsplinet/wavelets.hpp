#pragma once

// Orthonormal discrete wavelet transforms (Haar, Daubechies 4-tap) with
// periodic boundaries on power-of-two signals, the scaling-space projector
// V_J (zero the detail bands, invert), and dataset diameters before/after
// projection. Periodic extension keeps the filter bank exactly orthonormal,
// so V_J is non-expansive to machine precision.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hps {

enum class WaveletFamily { Haar, Daubechies4 };

inline std::string to_string(WaveletFamily f) {
    return f == WaveletFamily::Haar ? "haar" : "db4";
}

inline WaveletFamily parse_wavelet_family(const std::string& s) {
    if (s == "haar") return WaveletFamily::Haar;
    if (s == "db4" || s == "daubechies4") return WaveletFamily::Daubechies4;
    throw std::invalid_argument("unknown wavelet family: " + s);
}

namespace detail {

inline std::vector<double> scaling_filter(WaveletFamily f) {
    if (f == WaveletFamily::Haar) {
        const double r = 1.0 / std::sqrt(2.0);
        return {r, r};
    }
    const double s3 = std::sqrt(3.0);
    const double norm = 4.0 * std::sqrt(2.0);
    return {(1.0 + s3) / norm, (3.0 + s3) / norm, (3.0 - s3) / norm, (1.0 - s3) / norm};
}

inline std::vector<double> wavelet_filter(const std::vector<double>& h) {
    std::vector<double> g(h.size());
    for (std::size_t k = 0; k < h.size(); ++k)
        g[k] = (k % 2 == 0 ? 1.0 : -1.0) * h[h.size() - 1 - k];
    return g;
}

inline bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace detail

struct WaveletProjector {
    WaveletFamily family = WaveletFamily::Haar;
    int level = 1;
    int signal_len = 256;

    void validate() const {
        if (!detail::is_power_of_two(static_cast<std::size_t>(signal_len)))
            throw std::invalid_argument("WaveletProjector: signal length must be a power of two");
        if (level < 1) throw std::invalid_argument("WaveletProjector: level must be >= 1");
        int sub = signal_len >> level;
        if (signal_len >> level == 0 || (signal_len % (1 << level)) != 0)
            throw std::invalid_argument("WaveletProjector: level too large for signal length");
        int min_sub = family == WaveletFamily::Haar ? 1 : 4;
        if (sub < min_sub)
            throw std::invalid_argument("WaveletProjector: level too large for this family");
    }
};

struct DwtCoefficients {
    std::vector<double> approx;                // level-J scaling coefficients
    std::vector<std::vector<double>> details;  // details[0] = level 1 ... [J-1] = level J

    double norm() const {
        double s = 0.0;
        for (double v : approx) s += v * v;
        for (const auto& d : details)
            for (double v : d) s += v * v;
        return std::sqrt(s);
    }
};

namespace detail {

inline void dwt_step(const std::vector<double>& x, const std::vector<double>& h,
                     const std::vector<double>& g, std::vector<double>& approx,
                     std::vector<double>& det) {
    const std::size_t n = x.size(), half = n / 2, mask = n - 1;
    approx.assign(half, 0.0);
    det.assign(half, 0.0);
    for (std::size_t i = 0; i < half; ++i) {
        double a = 0.0, d = 0.0;
        for (std::size_t k = 0; k < h.size(); ++k) {
            double v = x[(2 * i + k) & mask];
            a += v * h[k];
            d += v * g[k];
        }
        approx[i] = a;
        det[i] = d;
    }
}

inline std::vector<double> idwt_step(const std::vector<double>& approx,
                                     const std::vector<double>& det,
                                     const std::vector<double>& h,
                                     const std::vector<double>& g) {
    const std::size_t half = approx.size(), n = 2 * half, mask = n - 1;
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < half; ++i) {
        for (std::size_t k = 0; k < h.size(); ++k) {
            const std::size_t pos = (2 * i + k) & mask;
            x[pos] += h[k] * approx[i] + g[k] * det[i];
        }
    }
    return x;
}

}  // namespace detail

inline DwtCoefficients dwt(const std::vector<double>& s, WaveletFamily family, int level) {
    WaveletProjector proj{family, level, static_cast<int>(s.size())};
    proj.validate();
    const auto h = detail::scaling_filter(family);
    const auto g = detail::wavelet_filter(h);
    DwtCoefficients out;
    out.approx = s;
    std::vector<double> a, d;
    for (int j = 0; j < level; ++j) {
        detail::dwt_step(out.approx, h, g, a, d);
        out.approx = a;
        out.details.push_back(d);
    }
    return out;
}

inline std::vector<double> idwt(const DwtCoefficients& c, WaveletFamily family) {
    const auto h = detail::scaling_filter(family);
    const auto g = detail::wavelet_filter(h);
    std::vector<double> x = c.approx;
    for (std::size_t j = c.details.size(); j-- > 0;) {
        if (c.details[j].size() != x.size())
            throw std::invalid_argument("idwt: inconsistent coefficient shapes");
        x = detail::idwt_step(x, c.details[j], h, g);
    }
    return x;
}

// V_J: transform to level J, drop all detail bands, invert.
inline std::vector<double> project(const WaveletProjector& proj, const std::vector<double>& s) {
    proj.validate();
    if (static_cast<int>(s.size()) != proj.signal_len)
        throw std::invalid_argument("project: signal length mismatch");
    DwtCoefficients c = dwt(s, proj.family, proj.level);
    for (auto& d : c.details) std::fill(d.begin(), d.end(), 0.0);
    return idwt(c, proj.family);
}

inline double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// Max pairwise Euclidean distance.
inline double diameter(const std::vector<std::vector<double>>& dataset) {
    if (dataset.size() < 2) throw std::invalid_argument("diameter: need at least 2 signals");
    for (const auto& s : dataset)
        if (s.size() != dataset.front().size())
            throw std::invalid_argument("diameter: signals must have equal lengths");
    double best = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i)
        for (std::size_t j = i + 1; j < dataset.size(); ++j)
            best = std::max(best, euclidean_distance(dataset[i], dataset[j]));
    return best;
}

inline double diameter_projected(const std::vector<std::vector<double>>& dataset,
                                 const WaveletProjector& proj) {
    if (dataset.size() < 2) throw std::invalid_argument("diameter: need at least 2 signals");
    std::vector<std::vector<double>> projected;
    projected.reserve(dataset.size());
    for (const auto& s : dataset) projected.push_back(project(proj, s));
    return diameter(projected);
}

}  // namespace hps

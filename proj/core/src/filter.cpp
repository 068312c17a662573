#include <algorithm>
#include <cmath>
#include <numbers>

#include "pcg/error.hpp"
#include "pcg/preprocess.hpp"

namespace pcg {
namespace {

using cplx = std::complex<double>;

struct Zpk {
    std::vector<cplx> z;
    std::vector<cplx> p;
    double k = 1.0;
};

Zpk analog_prototype(int order) {
    Zpk proto;
    for (int k = 0; k < order; ++k) {
        const double theta = std::numbers::pi * (2.0 * k + order + 1) / (2.0 * order);
        proto.p.push_back(std::polar(1.0, theta));
    }
    return proto;
}

cplx product_of(const std::vector<cplx>& v, cplx shift, int sign) {
    cplx prod = 1.0;
    for (const auto& x : v) prod *= shift + static_cast<double>(sign) * x;
    return prod;
}

Zpk bilinear(const Zpk& a, double fs) {
    const double fs2 = 2.0 * fs;
    Zpk d;
    for (const auto& z : a.z) d.z.push_back((fs2 + z) / (fs2 - z));
    for (const auto& p : a.p) d.p.push_back((fs2 + p) / (fs2 - p));
    while (d.z.size() < d.p.size()) d.z.emplace_back(-1.0, 0.0);
    d.k = a.k * (product_of(a.z, fs2, -1) / product_of(a.p, fs2, -1)).real();
    return d;
}

std::array<double, 3> poly2(cplx r1, cplx r2) {
    return {1.0, -(r1 + r2).real(), (r1 * r2).real()};
}

SosFilter zpk_to_sos(const Zpk& d) {
    // Conjugate pole pairs become one section each; real poles are paired up.
    std::vector<cplx> complex_poles;
    std::vector<double> real_poles;
    for (const auto& p : d.p) {
        if (std::abs(p.imag()) <= 1e-12 * std::max(1.0, std::abs(p))) {
            real_poles.push_back(p.real());
        } else if (p.imag() > 0) {
            complex_poles.push_back(p);
        }
    }
    std::sort(real_poles.begin(), real_poles.end());

    std::vector<std::vector<cplx>> pole_groups;
    for (const auto& p : complex_poles) pole_groups.push_back({p, std::conj(p)});
    for (std::size_t i = 0; i < real_poles.size(); i += 2) {
        if (i + 1 < real_poles.size()) {
            pole_groups.push_back({real_poles[i], real_poles[i + 1]});
        } else {
            pole_groups.push_back({real_poles[i]});
        }
    }

    // Zeros of a Butterworth design sit at +1 and/or -1. Interleave them so
    // bandpass sections get one of each.
    std::vector<double> pos, neg;
    for (const auto& z : d.z) (z.real() > 0 ? pos : neg).push_back(z.real());
    std::vector<double> zeros;
    while (!pos.empty() || !neg.empty()) {
        if (!pos.empty()) {
            zeros.push_back(pos.back());
            pos.pop_back();
        }
        if (!neg.empty()) {
            zeros.push_back(neg.back());
            neg.pop_back();
        }
    }

    SosFilter sos;
    std::size_t zi = 0;
    for (const auto& group : pole_groups) {
        std::array<double, 6> s{};
        if (group.size() == 2) {
            const auto a = poly2(group[0], group[1]);
            const auto b = poly2(zeros.at(zi), zeros.at(zi + 1));
            zi += 2;
            s = {b[0], b[1], b[2], a[0], a[1], a[2]};
        } else {
            s = {1.0, -zeros.at(zi), 0.0, 1.0, -group[0].real(), 0.0};
            zi += 1;
        }
        sos.sections.push_back(s);
    }
    for (int i = 0; i < 3; ++i) sos.sections.front()[i] *= d.k;
    return sos;
}

double prewarp(double f, double fs) { return 2.0 * fs * std::tan(std::numbers::pi * f / fs); }

void check_spec(const FilterSpec& spec, double fs) {
    if (spec.order < 1 || spec.order > 20) {
        throw Error("filter order must be between 1 and 20, got " + std::to_string(spec.order));
    }
    const std::size_t edges = spec.kind == FilterKind::bandpass ? 2 : 1;
    if (spec.cutoff_hz.size() != edges) {
        throw Error(std::string(to_string(spec.kind)) + " filter needs " + std::to_string(edges) +
                    " cutoff frequencies");
    }
    for (double f : spec.cutoff_hz) {
        if (!(f > 0.0)) throw Error("cutoff frequency must be positive, got " + format_number(f));
        if (!(f < fs / 2.0)) {
            throw Error("cutoff " + format_number(f) + " Hz is not below the Nyquist frequency " +
                        format_number(fs / 2.0) + " Hz");
        }
    }
    if (edges == 2 && !(spec.cutoff_hz[0] < spec.cutoff_hz[1])) {
        throw Error("bandpass needs low < high cutoff");
    }
}

std::array<double, 2> steady_state(const std::array<double, 6>& s) {
    const double g = (s[0] + s[1] + s[2]) / (1.0 + s[4] + s[5]);
    const double z2 = s[2] - s[5] * g;
    const double z1 = s[1] - s[4] * g + z2;
    return {z1, z2};
}

double section_dc_gain(const std::array<double, 6>& s) {
    return (s[0] + s[1] + s[2]) / (1.0 + s[4] + s[5]);
}

void run_sections(const SosFilter& f, std::vector<double>& x, const std::vector<std::array<double, 2>>& zi) {
    for (std::size_t k = 0; k < f.sections.size(); ++k) {
        const auto& s = f.sections[k];
        double z1 = zi[k][0];
        double z2 = zi[k][1];
        for (double& v : x) {
            const double in = v;
            const double y = s[0] * in + z1;
            z1 = s[1] * in - s[4] * y + z2;
            z2 = s[2] * in - s[5] * y;
            v = y;
        }
    }
}

}  // namespace

std::string_view to_string(FilterKind kind) {
    switch (kind) {
        case FilterKind::lowpass: return "lowpass";
        case FilterKind::highpass: return "highpass";
        case FilterKind::bandpass: return "bandpass";
    }
    return "lowpass";
}

std::optional<FilterKind> parse_filter_kind(std::string_view text) {
    if (text == "lowpass" || text == "lp") return FilterKind::lowpass;
    if (text == "highpass" || text == "hp") return FilterKind::highpass;
    if (text == "bandpass" || text == "bp") return FilterKind::bandpass;
    return std::nullopt;
}

SosFilter design_butterworth(const FilterSpec& spec, double fs) {
    check_spec(spec, fs);
    Zpk a = analog_prototype(spec.order);
    const int n = spec.order;
    switch (spec.kind) {
        case FilterKind::lowpass: {
            const double w = prewarp(spec.cutoff_hz[0], fs);
            for (auto& p : a.p) p *= w;
            a.k = std::pow(w, n);
            break;
        }
        case FilterKind::highpass: {
            const double w = prewarp(spec.cutoff_hz[0], fs);
            const cplx gain = product_of(a.p, 0.0, -1);
            for (auto& p : a.p) p = w / p;
            a.z.assign(static_cast<std::size_t>(n), cplx(0.0, 0.0));
            a.k = (1.0 / gain).real();
            break;
        }
        case FilterKind::bandpass: {
            const double w1 = prewarp(spec.cutoff_hz[0], fs);
            const double w2 = prewarp(spec.cutoff_hz[1], fs);
            const double bw = w2 - w1;
            const double w0 = std::sqrt(w1 * w2);
            std::vector<cplx> poles;
            for (const auto& p : a.p) {
                const cplx half = p * (bw / 2.0);
                const cplx root = std::sqrt(half * half - w0 * w0);
                poles.push_back(half + root);
                poles.push_back(half - root);
            }
            a.p = std::move(poles);
            a.z.assign(static_cast<std::size_t>(n), cplx(0.0, 0.0));
            a.k = std::pow(bw, n);
            break;
        }
    }
    return zpk_to_sos(bilinear(a, fs));
}

std::complex<double> frequency_response(const SosFilter& filter, double f_hz, double fs) {
    const cplx z1 = std::polar(1.0, -2.0 * std::numbers::pi * f_hz / fs);
    const cplx z2 = z1 * z1;
    cplx h = 1.0;
    for (const auto& s : filter.sections) {
        h *= (s[0] + s[1] * z1 + s[2] * z2) / (s[3] + s[4] * z1 + s[5] * z2);
    }
    return h;
}

std::vector<double> sosfilt(const SosFilter& filter, std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    run_sections(filter, y, std::vector<std::array<double, 2>>(filter.sections.size(), {0.0, 0.0}));
    return y;
}

std::vector<double> sosfiltfilt(const SosFilter& filter, std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) return {x.begin(), x.end()};
    const std::size_t want = 3 * (2 * filter.sections.size() + 1);
    const std::size_t pad = std::min(want, n - 1);

    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

    // Steady-state conditions for a unit step, scaled by the DC gain of the
    // preceding sections.
    std::vector<std::array<double, 2>> zi_unit;
    double scale = 1.0;
    for (const auto& s : filter.sections) {
        auto z = steady_state(s);
        zi_unit.push_back({z[0] * scale, z[1] * scale});
        scale *= section_dc_gain(s);
    }
    auto scaled = [&](double x0) {
        auto zi = zi_unit;
        for (auto& z : zi) {
            z[0] *= x0;
            z[1] *= x0;
        }
        return zi;
    };

    run_sections(filter, ext, scaled(ext.front()));
    std::reverse(ext.begin(), ext.end());
    run_sections(filter, ext, scaled(ext.front()));
    std::reverse(ext.begin(), ext.end());
    return {ext.begin() + static_cast<std::ptrdiff_t>(pad), ext.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

Signal butterworth(const Signal& sig, const FilterSpec& spec) {
    const SosFilter f = design_butterworth(spec, sig.fs());
    auto y = spec.zero_phase ? sosfiltfilt(f, sig.samples()) : sosfilt(f, sig.samples());
    Params params{{"order", std::to_string(spec.order)}, {"kind", std::string(to_string(spec.kind))}};
    std::string cut;
    for (std::size_t i = 0; i < spec.cutoff_hz.size(); ++i) {
        if (i) cut += '-';
        cut += format_number(spec.cutoff_hz[i]);
    }
    params.emplace_back("cutoff_hz", cut);
    params.emplace_back("zero_phase", spec.zero_phase ? "true" : "false");
    return sig.derive(std::move(y), format_step("butterworth", params));
}

}  // namespace pcg

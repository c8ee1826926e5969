#include "curvedist/counting.hpp"

#include "curvedist/errors.hpp"
#include "curvedist/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace curvedist {

namespace {

void check_sorted_in_domain(const Curve &curve, const std::vector<double> &params) {
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!curve.domain().contains(params[i]))
            throw DomainError("point-set parameter " + std::to_string(params[i]) + " outside the domain");
        if (i > 0 && !(params[i] > params[i - 1])) throw ValidationError("point-set parameters must be distinct");
    }
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

int parse_count(const std::string &s) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw ValidationError("bad count '" + s + "'");
        return v;
    } catch (const std::logic_error &) {
        throw ValidationError("bad count '" + s + "'");
    }
}

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

// Index pairs (i, j), i < j, in row-major order.
std::vector<std::pair<std::size_t, std::size_t>> row_starts(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> starts;
    std::size_t offset = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        starts.emplace_back(i, offset);
        offset += n - 1 - i;
    }
    return starts;
}

} // namespace

ParamPointSet make_point_set(const Curve &curve, std::vector<Rational> params, std::string label) {
    std::sort(params.begin(), params.end());
    std::vector<double> approx;
    approx.reserve(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!curve.domain().contains(params[i]))
            throw DomainError("point-set parameter " + format_rational(params[i]) + " outside the domain");
        if (i > 0 && params[i] == params[i - 1]) throw ValidationError("point-set parameters must be distinct");
        approx.push_back(to_double(params[i]));
    }
    check_sorted_in_domain(curve, approx);
    return {curve, std::move(approx), std::move(params), std::move(label)};
}

ParamPointSet make_point_set(const Curve &curve, std::vector<double> params, std::string label) {
    std::sort(params.begin(), params.end());
    check_sorted_in_domain(curve, params);
    return {curve, std::move(params), std::nullopt, std::move(label)};
}

Scheme parse_scheme(const std::string &text) {
    auto parts = split(text, ':');
    if (parts.empty()) throw ValidationError("empty scheme");
    const auto &kind = parts[0];
    if (kind == "arith" && parts.size() == 4)
        return ArithmeticProgression{parse_rational(parts[1]), parse_rational(parts[2]), parse_count(parts[3])};
    if (kind == "geom" && parts.size() == 4)
        return GeometricProgression{parse_rational(parts[1]), parse_rational(parts[2]), parse_count(parts[3])};
    if (kind == "random" && parts.size() == 3)
        return UniformRandom{static_cast<std::uint64_t>(std::stoull(parts[1])), parse_count(parts[2])};
    if (kind == "angle" && parts.size() == 2) return EquallySpacedAngle{parse_count(parts[1])};
    throw ValidationError("unrecognised scheme '" + text + "'");
}

std::string describe_scheme(const Scheme &scheme) {
    return std::visit(
        [](const auto &s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ArithmeticProgression>)
                return "arith:" + format_rational(s.start) + ":" + format_rational(s.step) + ":" + std::to_string(s.count);
            else if constexpr (std::is_same_v<T, GeometricProgression>)
                return "geom:" + format_rational(s.start) + ":" + format_rational(s.ratio) + ":" + std::to_string(s.count);
            else if constexpr (std::is_same_v<T, UniformRandom>)
                return "random:" + std::to_string(s.seed) + ":" + std::to_string(s.count);
            else
                return "angle:" + std::to_string(s.count);
        },
        scheme);
}

int scheme_size(const Scheme &scheme) {
    return std::visit([](const auto &s) { return s.count; }, scheme);
}

Scheme with_size(const Scheme &scheme, int count) {
    Scheme out = scheme;
    std::visit([count](auto &s) { s.count = count; }, out);
    return out;
}

ParamPointSet generate_point_set(const Curve &curve, const Scheme &scheme) {
    const int n = scheme_size(scheme);
    if (n < 2) throw ValidationError("point sets need N >= 2");
    const std::string label = describe_scheme(scheme);
    return std::visit(
        [&](const auto &s) -> ParamPointSet {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ArithmeticProgression>) {
                if (s.step == 0) throw ValidationError("arithmetic progression needs a nonzero step");
                std::vector<Rational> params;
                for (int i = 0; i < n; ++i) params.push_back(s.start + s.step * i);
                return make_point_set(curve, std::move(params), label);
            } else if constexpr (std::is_same_v<T, GeometricProgression>) {
                if (s.start == 0 || s.ratio == 0 || s.ratio == 1 || s.ratio == -1)
                    throw ValidationError("geometric progression needs start != 0 and |ratio| != 0, 1");
                std::vector<Rational> params;
                Rational v = s.start;
                for (int i = 0; i < n; ++i, v *= s.ratio) params.push_back(v);
                return make_point_set(curve, std::move(params), label);
            } else if constexpr (std::is_same_v<T, UniformRandom>) {
                const Interval window = curve.domain().clipped(1.0);
                const BigInt denom = BigInt(1) << 32;
                // Open interval of admissible numerators.
                Rational lo_scaled = *window.lo_exact() * denom;
                Rational hi_scaled = *window.hi_exact() * denom;
                BigInt lo_num, hi_num;
                mpz_fdiv_q(lo_num.get_mpz_t(), lo_scaled.get_num_mpz_t(), lo_scaled.get_den_mpz_t());
                mpz_cdiv_q(hi_num.get_mpz_t(), hi_scaled.get_num_mpz_t(), hi_scaled.get_den_mpz_t());
                lo_num += 1;
                hi_num -= 1;
                if (hi_num - lo_num + 1 < n) throw DomainError("domain too small for the requested random set");
                std::mt19937_64 rng(s.seed);
                std::uniform_int_distribution<long long> dist(lo_num.get_si(), hi_num.get_si());
                std::set<long long> chosen;
                while (static_cast<int>(chosen.size()) < n) chosen.insert(dist(rng));
                std::vector<Rational> params;
                for (long long k : chosen) {
                    Rational r(BigInt(static_cast<long>(k)), denom);
                    r.canonicalize();
                    params.push_back(r);
                }
                return make_point_set(curve, std::move(params), label);
            } else {
                if (!curve.is_helix() || curve.helix().radii.size() != 1 || !curve.helix().drift.empty())
                    throw SchemeMismatch("equally spaced angles need a circle (helix with k = 1, l = 0)");
                const double lam = std::abs(curve.helix().frequencies[0]);
                const double period = 2.0 * std::numbers::pi / lam;
                const double span = period * (n - 1) / n;
                const Interval &dom = curve.domain();
                double start = std::isfinite(dom.lo()) && std::isfinite(dom.hi()) ? 0.5 * (dom.lo() + dom.hi()) - 0.5 * span
                               : std::isfinite(dom.lo())                          ? dom.lo() + period / n
                               : std::isfinite(dom.hi())                          ? dom.hi() - period / n - span
                                                                                  : 0.0;
                std::vector<double> params;
                for (int i = 0; i < n; ++i) params.push_back(start + period * i / n);
                return make_point_set(curve, std::move(params), label);
            }
        },
        scheme);
}

DistinctCount count_distinct_values(const ParamPointSet &pset, const Quantity &q, const CountMode &mode) {
    const std::size_t n = pset.size();
    DistinctCount out;
    out.pairs = n < 2 ? 0 : pair_count(n);
    if (out.pairs == 0) return out;
    const auto starts = row_starts(n);

    if (std::holds_alternative<ExactMode>(mode)) {
        if (!pset.curve.is_rational() || !pset.exact)
            throw ExactnessUnavailable("exact counting needs a rational curve and rational parameters");
        std::vector<ExactPoint> pts(n);
        parallel_for(n, [&](std::size_t i) { pts[i] = evaluate_exact(pset.curve, (*pset.exact)[i]); });
        std::vector<Rational> vals(out.pairs);
        parallel_for(starts.size(), [&](std::size_t r) {
            const auto [i, offset] = starts[r];
            for (std::size_t j = i + 1; j < n; ++j) vals[offset + (j - i - 1)] = eval_quantity_exact(q, pts[i], pts[j]);
        });
        std::sort(vals.begin(), vals.end());
        std::size_t run = 0;
        for (std::size_t k = 0; k < vals.size(); ++k) {
            if (k == 0 || vals[k] != vals[k - 1]) {
                out.values.push_back(to_double(vals[k]));
                run = 0;
            }
            out.max_multiplicity = std::max(out.max_multiplicity, ++run);
        }
        out.exact = true;
    } else {
        const double rel_eps = std::get<ToleranceMode>(mode).rel_eps;
        if (!(rel_eps > 0.0)) throw ValidationError("tolerance mode needs rel_eps > 0");
        constexpr double abs_eps = 1e-300;
        std::vector<Vec> pts(n);
        parallel_for(n, [&](std::size_t i) { pts[i] = evaluate(pset.curve, pset.params[i]); });
        std::vector<double> vals(out.pairs);
        parallel_for(starts.size(), [&](std::size_t r) {
            const auto [i, offset] = starts[r];
            for (std::size_t j = i + 1; j < n; ++j) vals[offset + (j - i - 1)] = eval_quantity(q, pts[i], pts[j]);
        });
        std::sort(vals.begin(), vals.end());
        std::size_t run = 0;
        for (std::size_t k = 0; k < vals.size(); ++k) {
            const bool merges = k > 0 && (vals[k] - vals[k - 1]) < rel_eps * std::max(std::abs(vals[k]), std::abs(vals[k - 1])) + abs_eps;
            if (!merges) {
                out.values.push_back(vals[k]);
                run = 0;
            }
            out.max_multiplicity = std::max(out.max_multiplicity, ++run);
        }
    }
    out.count = out.values.size();
    out.min_value = out.values.front();
    out.max_value = out.values.back();
    return out;
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>> &samples) {
    if (samples.size() < 3) throw InsufficientSamples("exponent fit needs at least 3 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].first > 0.0 && samples[i].second > 0.0))
            throw ValidationError("exponent fit needs positive sizes and counts");
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw ValidationError("exponent fit needs strictly increasing N");
    }
    const double m = static_cast<double>(samples.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto &[nv, c] : samples) {
        const double x = std::log(nv), y = std::log(c);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    ExponentFit fit;
    fit.samples = samples;
    const double cov = sxy - sx * sy / m;
    const double varx = sxx - sx * sx / m;
    const double vary = syy - sy * sy / m;
    fit.slope = cov / varx;
    fit.intercept = (sy - fit.slope * sx) / m;
    fit.r_squared = vary <= 0.0 ? 1.0 : (cov * cov) / (varx * vary);
    return fit;
}

LowerBound elekes_lower_bound(long num_points, long num_curves, double admissibility, double incidence_constant) {
    if (num_points < 3) throw ValidationError("lower bound needs NP >= 3");
    if (num_curves < 1) throw ValidationError("lower bound needs NXi >= 1");
    if (!(admissibility >= 1.0)) throw ValidationError("admissibility constant must be >= 1");
    if (!(incidence_constant > 0.0)) throw ValidationError("incidence constant must be positive");
    const double incidences = static_cast<double>(num_points - 2) * static_cast<double>(num_curves);
    const double curves = static_cast<double>(num_curves);
    const double curves_23 = std::cbrt(curves * curves);
    auto slack = [&](double delta) {
        return incidence_constant * (curves_23 * std::pow(delta, 4.0 / 3.0) + curves + delta * delta) - incidences;
    };
    if (slack(1.0) >= 0.0) return {1.0, true};
    double lo = 1.0, hi = 2.0;
    while (slack(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (slack(mid) < 0.0 ? lo : hi) = mid;
    }
    return {hi, false};
}

} // namespace curvedist

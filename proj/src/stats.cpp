#include "gesturequad/stats.hpp"

#include "gesturequad/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

namespace gq {

namespace {

void require_nonempty(std::span<const double> xs) {
    if (xs.empty()) {
        throw Error(ErrorCode::EmptyDataset, "empty dataset");
    }
}

std::vector<double> sorted(std::span<const double> xs) {
    std::vector<double> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    return v;
}

double quantile_sorted(const std::vector<double>& v, double p) {
    const double h = (static_cast<double>(v.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) {
            break;
        }
    }
    return h;
}

}  // namespace

double mean(std::span<const double> xs) {
    require_nonempty(xs);
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) {
        throw Error(ErrorCode::InsufficientData, "variance needs at least 2 values");
    }
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - m) * (x - m);
    }
    return ss / static_cast<double>(xs.size() - 1);
}

double median(std::span<const double> xs) { return quantile(xs, 0.5); }

double quantile(std::span<const double> xs, double p) {
    require_nonempty(xs);
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "quantile probability outside [0,1]");
    }
    return quantile_sorted(sorted(xs), p);
}

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0) || x < 0.0 || x > 1.0) {
        throw Error(ErrorCode::InvalidArgument, "incomplete_beta: bad arguments");
    }
    if (x == 0.0 || x == 1.0) {
        return x;
    }
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double t_cdf(double t, double df) {
    if (!(df > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "t_cdf: df must be > 0");
    }
    if (std::isinf(t)) {
        return t > 0 ? 1.0 : 0.0;
    }
    const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    return t > 0 ? 1.0 - tail : tail;
}

TTestResult t_test(std::span<const double> a, std::span<const double> b, TTest kind) {
    if (a.size() < 2 || b.size() < 2) {
        throw Error(ErrorCode::InsufficientData, "t test needs at least 2 values per group");
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double ma = mean(a);
    const double mb = mean(b);
    const double va = sample_variance(a);
    const double vb = sample_variance(b);

    TTestResult r;
    double se2 = 0.0;
    if (kind == TTest::Welch) {
        const double qa = va / na;
        const double qb = vb / nb;
        se2 = qa + qb;
        r.df = se2 > 0.0 ? se2 * se2 / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0))
                         : na + nb - 2.0;
    } else {
        r.df = na + nb - 2.0;
        const double pooled = ((na - 1.0) * va + (nb - 1.0) * vb) / r.df;
        se2 = pooled * (1.0 / na + 1.0 / nb);
    }
    const double diff = ma - mb;
    if (se2 == 0.0) {
        // Both samples constant: no evidence unless the means differ.
        if (diff == 0.0) {
            r.t = 0.0;
            r.p = 1.0;
        } else {
            r.t = std::copysign(std::numeric_limits<double>::infinity(), diff);
            r.p = 0.0;
        }
        return r;
    }
    r.t = diff / std::sqrt(se2);
    r.p = std::min(1.0, 2.0 * t_cdf(-std::fabs(r.t), r.df));
    return r;
}

TimeStats time_stats(std::span<const double> seconds) {
    require_nonempty(seconds);
    for (double s : seconds) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw Error(ErrorCode::InvalidArgument, "times must be positive");
        }
    }
    const auto v = sorted(seconds);
    TimeStats st;
    st.n = v.size();
    st.mean = mean(v);
    st.median = quantile_sorted(v, 0.5);
    st.q1 = quantile_sorted(v, 0.25);
    st.q3 = quantile_sorted(v, 0.75);
    const double iqr = st.q3 - st.q1;
    st.lower_fence = st.q1 - 1.5 * iqr;
    st.upper_fence = st.q3 + 1.5 * iqr;
    for (double s : seconds) {
        if (s < st.lower_fence || s > st.upper_fence) {
            st.outliers.push_back(s);
        }
    }
    return st;
}

std::string format_mss(double seconds) {
    if (!std::isfinite(seconds) || seconds < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "cannot format negative or non-finite time");
    }
    const auto total = static_cast<long long>(std::llround(seconds));
    const long long m = total / 60;
    const long long s = total % 60;
    return std::to_string(m) + ":" + (s < 10 ? "0" : "") + std::to_string(s);
}

double parse_mss(std::string_view text) {
    const auto colon = text.find(':');
    auto bad = [&]() -> Error {
        return Error(ErrorCode::InvalidArgument, "not an m:ss time: '" + std::string(text) + "'");
    };
    if (colon == std::string_view::npos || colon == 0 || text.size() - colon - 1 != 2) {
        throw bad();
    }
    long long m = 0;
    int s = 0;
    const char* mb = text.data();
    const char* me = text.data() + colon;
    auto r1 = std::from_chars(mb, me, m);
    auto r2 = std::from_chars(me + 1, text.data() + text.size(), s);
    if (r1.ec != std::errc{} || r1.ptr != me || r2.ec != std::errc{} ||
        r2.ptr != text.data() + text.size() || m < 0 || s < 0 || s > 59) {
        throw bad();
    }
    return static_cast<double>(m * 60 + s);
}

}  // namespace gq

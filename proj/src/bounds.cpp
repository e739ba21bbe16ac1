#include "pcs/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

#include "json.hpp"

namespace pcs {

Fraction::Fraction(i64 n, i64 d) {
    if (d == 0) throw DomainError("Fraction: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i64 g = (i64)gcd_u64((u64)(n < 0 ? -n : n), (u64)d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

Fraction Fraction::operator+(const Fraction& o) const {
    return Fraction(num * o.den + o.num * den, den * o.den);
}
Fraction Fraction::operator-(const Fraction& o) const {
    return Fraction(num * o.den - o.num * den, den * o.den);
}
Fraction Fraction::operator*(const Fraction& o) const {
    return Fraction(num * o.num, den * o.den);
}
Fraction Fraction::operator/(const Fraction& o) const {
    if (o.num == 0) throw DomainError("Fraction: division by zero");
    return Fraction(num * o.den, den * o.num);
}

ExponentSet exponents(int j1, int j2) {
    if (j1 < 2 || j2 < 2) throw DomainError("exponents: j1, j2 must be >= 2");
    ExponentSet e;
    e.j1 = j1;
    e.j2 = j2;
    e.rho1 = Fraction(j1 - 1, 2 * (2 * j1 - 1));
    e.sigma = Fraction(7 * j2 - 4, 2 * (5 * j2 - 3));
    e.rho2 = Fraction(j2 - 1, 2 * (5 * j2 - 3));
    e.range1_lo = Fraction(j1 - 1, 2 * j1 - 1);
    e.range1_hi = Fraction(3 * j1 - 2, 2 * (2 * j1 - 1));
    e.range2_lo = Fraction(j2 - 1, 3 * j2 - 2);
    e.crossover = Fraction(3 * j1 * j2 - j1 - 4 * j2 + 2, (2 * j1 - 1) * (2 * j2 - 1));
    return e;
}

HbExponents hb_exponents(int r) {
    if (r < 3) throw DomainError("hb_exponents: r must be >= 3");
    HbExponents h;
    h.r = r;
    h.exponent = Fraction(r + 2, 4 * r * r);
    h.valid_lo = Fraction(1, 4) + Fraction(1, 2 * r);
    h.valid_hi = Fraction(5, 12) + Fraction(1, 2 * r);
    h.optimal_lo = Fraction(r * r + 5 * r + 2, 4 * (r * r + r));
    h.optimal_hi = Fraction(r * r + 3 * r - 2, 4 * (r * r - r));
    return h;
}

SupersedeReport supersede_ranges(int j1, int j2, int r_max) {
    SupersedeReport rep;
    for (int r = 3; r <= r_max; ++r) {
        Fraction opt_lo = hb_exponents(r).optimal_lo;
        // first branch: r(j1-1)/((r-2)(2j1-1)) - (r+2)/(2r(r-2)) <= opt_lo
        Fraction lhs1 = Fraction((i64)r * (j1 - 1), (i64)(r - 2) * (2 * j1 - 1)) -
                        Fraction(r + 2, 2 * r * (r - 2));
        if (lhs1 <= opt_lo) rep.first_branch.push_back(r);
        // second branch: (2(j2-1)r^2 - (5j2-3)(r+2)) / (2(3j2-2)r^2 - 4(5j2-3)r) <= opt_lo;
        // both parts are negative for small r, which the sign-normalizing
        // Fraction constructor resolves to the actual quotient value
        Fraction lhs2 = Fraction((i64)2 * (j2 - 1) * r * r - (i64)(5 * j2 - 3) * (r + 2),
                                 (i64)2 * (3 * j2 - 2) * r * r - (i64)4 * (5 * j2 - 3) * r);
        if (lhs2 <= opt_lo) rep.second_branch.push_back(r);
    }
    return rep;
}

namespace {

// smallest k with p^k >= bound (long-double logs with a snap-to-integer
// guard, since bounds are exact p-powers in the common cases)
u64 ceil_log_p(double bound, u64 p) {
    if (bound <= 1.0) return 0;
    long double t = std::log((long double)bound) / std::log((long double)p);
    u64 k = (u64)std::ceil((double)(t - 1e-9L));
    while (std::pow((long double)p, (long double)k) < (long double)bound * (1.0L - 1e-12L)) ++k;
    return k;
}

}  // namespace

HChoice choose_H(Branch branch, double X, u64 p, u64 n, int j) {
    if (j < 2) throw DomainError("choose_H: j must be >= 2");
    HChoice hc;
    if (branch == Branch::OneShift) {
        // q^{(j-1)/(2j-1)} <= H1 < p q^{(j-1)/(2j-1)}: k1 = ceil(n(j-1)/(2j-1))
        hc.k1 = ((u64)n * (u64)(j - 1) + (u64)(2 * j - 2)) / (u64)(2 * j - 1);
        hc.H1 = pow_u64(p, hc.k1);
        if ((double)hc.H1 > X)
            throw Infeasible("choose_H: one-shift H1 = p^" + std::to_string(hc.k1) +
                             " exceeds X");
        return hc;
    }
    double q = std::pow((double)p, (double)n);
    double e1 = (double)(2 * j - 1) / (double)(5 * j - 3);
    double e2 = (double)(j - 1) / (double)(5 * j - 3);
    double lower1 = std::pow(X, e1) * std::pow(q, e2);
    double lower2 = std::pow(X, -e2) * std::pow(q, 2.0 * e2);
    hc.k1 = ceil_log_p(lower1, p);
    hc.k2 = ceil_log_p(lower2, p);
    hc.H1 = pow_u64(p, hc.k1);
    hc.H2 = pow_u64(p, hc.k2);
    if ((double)hc.H1 > X || (double)hc.H2 > X)
        throw Infeasible("choose_H: two-shift window lies above X (k1=" +
                         std::to_string(hc.k1) + ", k2=" + std::to_string(hc.k2) + ")");
    return hc;
}

namespace {

std::vector<u64> log_grid(double lo, double hi, int points) {
    std::vector<u64> Ns;
    if (points <= 0) return Ns;
    for (int i = 0; i < points; ++i) {
        double f = points == 1 ? 0.0 : (double)i / (points - 1);
        u64 N = (u64)std::llround(std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))));
        if (N < 1) N = 1;
        if (Ns.empty() || N != Ns.back()) Ns.push_back(N);
    }
    return Ns;
}

}  // namespace

std::vector<SweepRecord> sweep_grid(const SweepConfig& cfg, Branch branch,
                                    const std::vector<u64>& Ns) {
    DirichletCharacter chi(cfg.p, cfg.n, cfg.chi_index);
    CharSums cs(chi);
    double q = std::pow((double)cfg.p, (double)cfg.n);
    ExponentSet ex = exponents(cfg.j1, cfg.j2);

    std::vector<SweepRecord> out(Ns.size());
    auto run_one = [&](size_t i) {
        u64 N = Ns[i];
        SumParams params;
        params.M = N;
        params.N = N;
        auto t0 = std::chrono::steady_clock::now();
        double abs_sum = std::abs(cs.sum_SQ(cfg.Q, params));
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double bound =
            branch == Branch::OneShift
                ? std::pow((double)N, 1.5) * std::pow(q, ex.rho1.value())
                : std::pow((double)N, 1.0 + ex.sigma.value()) * std::pow(q, ex.rho2.value());
        SweepRecord rec{cfg.p,    cfg.n,          cfg.Q, cfg.chi_index,
                        N,        N,              branch == Branch::OneShift ? "one-shift"
                                                                            : "two-shift",
                        abs_sum,  bound,          abs_sum / bound,
                        cfg.timings ? secs : 0.0};
        out[i] = rec;
    };

    u64 jobs = std::max<u64>(1, cfg.jobs);
    if (jobs == 1 || Ns.size() <= 1) {
        for (size_t i = 0; i < Ns.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> workers;
        std::atomic<size_t> next{0};
        for (u64 w = 0; w < std::min<u64>(jobs, Ns.size()); ++w)
            workers.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < Ns.size(); i = next.fetch_add(1))
                    run_one(i);
            });
        for (auto& t : workers) t.join();
    }
    return out;
}

double fit_slope(const std::vector<SweepRecord>& records) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const SweepRecord& r : records) {
        if (r.abs_sum <= 0.0) continue;
        double x = std::log((double)r.N), y = std::log(r.abs_sum);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) throw DomainError("fit_slope: need at least two usable records");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

SweepResult sweep_main_bound(const SweepConfig& cfg) {
    double q = std::pow((double)cfg.p, (double)cfg.n);
    ExponentSet ex = exponents(cfg.j1, cfg.j2);

    std::vector<u64> upperNs = log_grid(std::pow(q, ex.crossover.value()),
                                        std::pow(q, ex.range1_hi.value()), cfg.points);
    std::vector<u64> lowerNs = log_grid(std::pow(q, ex.range2_lo.value()),
                                        std::pow(q, ex.crossover.value()), cfg.points);

    SweepResult res;
    res.upper = sweep_grid(cfg, Branch::OneShift, upperNs);
    res.lower = sweep_grid(cfg, Branch::TwoShift, lowerNs);
    res.slope_upper = fit_slope(res.upper);
    res.slope_lower = fit_slope(res.lower);
    return res;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::string out = "p,n,Q_a,Q_b,Q_c,chi_index,M,N,branch,abs_sum,bound,ratio,seconds\n";
    char buf[256];
    for (const SweepRecord& r : records) {
        std::snprintf(buf, sizeof(buf),
                      "%llu,%llu,%lld,%lld,%lld,%llu,%llu,%llu,%s,%.9e,%.9e,%.9e,%.3f\n",
                      (unsigned long long)r.p, (unsigned long long)r.n, (long long)r.Q.a,
                      (long long)r.Q.b, (long long)r.Q.c, (unsigned long long)r.chi_index,
                      (unsigned long long)r.M, (unsigned long long)r.N, r.branch.c_str(),
                      r.abs_sum, r.bound, r.ratio, r.seconds);
        out += buf;
    }
    return out;
}

std::string sweep_json(const std::vector<SweepRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.9e", v);
        return std::string(buf);
    };
    for (const SweepRecord& r : records) {
        arr.push_back({{"p", r.p},
                       {"n", r.n},
                       {"Q", {r.Q.a, r.Q.b, r.Q.c}},
                       {"chi_index", r.chi_index},
                       {"M", r.M},
                       {"N", r.N},
                       {"branch", r.branch},
                       {"abs_sum", num(r.abs_sum)},
                       {"bound", num(r.bound)},
                       {"ratio", num(r.ratio)},
                       {"seconds", r.seconds}});
    }
    return nlohmann::json{{"records", arr}}.dump(2) + "\n";
}

}  // namespace pcs

#include "betarep/switched.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

#include "betarep/csv.hpp"

namespace betarep {

Vec2 mat_vec(const Mat2& m, const Vec2& x) { return {m[0] * x[0] + m[1] * x[1], m[2] * x[0] + m[3] * x[1]}; }

Mat2 multiply(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

double determinant(const Mat2& m) { return m[0] * m[3] - m[1] * m[2]; }

double norm(const Vec2& x) { return std::hypot(x[0], x[1]); }

MatrixSystem MatrixSystem::make(double theta, double c, double beta) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("MatrixSystem: c must lie in (0, 1)");
    if (!(beta * c >= 1.0)) throw DomainError("MatrixSystem: need beta >= 1/c");
    MatrixSystem s;
    s.theta = theta;
    s.c = c;
    s.beta = beta;
    const double co = std::cos(theta), si = std::sin(theta);
    s.a1_ = {co, si, -si, co};
    s.a2_ = {c, 0.0, 0.0, beta * c};
    return s;
}

Mat2 MatrixSystem::a1() const { return a1_; }
Mat2 MatrixSystem::a2() const { return a2_; }

const Mat2& MatrixSystem::matrix(std::uint8_t symbol) const {
    if (symbol == 1) return a1_;
    if (symbol == 2) return a2_;
    throw DomainError("MatrixSystem: symbol must be 1 or 2");
}

MatrixTrajectory simulate_matrix(const MatrixSystem& sys, const Vec2& x0, const SwitchSignal& signal) {
    if (x0[0] == 0.0 && x0[1] == 0.0) throw DomainError("simulate_matrix: x0 must be nonzero");
    MatrixTrajectory t;
    t.states.reserve(signal.symbols.size() + 1);
    t.states.push_back(x0);
    t.norms.push_back(norm(x0));
    const double det2 = determinant(sys.a2());
    // The running product is also carried as Q R with Q a rotation; its
    // determinant is the product of R's diagonals, free of the cancellation
    // that determinant(product) suffers once the entries grow.
    Mat2 q{1.0, 0.0, 0.0, 1.0};
    double log_det = 0.0;
    for (std::uint8_t s : signal.symbols) {
        const Mat2& m = sys.matrix(s);
        t.states.push_back(mat_vec(m, t.states.back()));
        t.norms.push_back(norm(t.states.back()));
        t.product = multiply(m, t.product);
        if (s == 2) t.expected_determinant *= det2;
        const Mat2 mq = multiply(m, q);
        const double r11 = std::hypot(mq[0], mq[2]);
        const Vec2 q1{mq[0] / r11, mq[2] / r11};
        const double r22 = -q1[1] * mq[1] + q1[0] * mq[3];
        log_det += std::log(r11) + std::log(r22);
        q = {q1[0], -q1[1], q1[1], q1[0]};
    }
    t.product_determinant = std::exp(log_det);
    return t;
}

double linearized_rate(double c, const DigitWord& word, int k) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("linearized_rate: c must lie in (0, 1)");
    if (k < 1 || k > word.size()) throw DomainError("linearized_rate: word has fewer than k digits");
    Digit sum = 0;
    for (int i = 0; i < k; ++i) sum += word.digits[static_cast<std::size_t>(i)];
    const Rational dbar(sum, k);
    return std::pow(c, 1.0 / (dbar.to_double() + 1.0));
}

Strategy greedy_angle_strategy() {
    return [](const ProbeState& s, const MatrixSystem& sys) -> std::uint8_t {
        const double angle = s.x[0] == 0.0 ? std::numbers::pi / 2 : std::atan(s.x[1] / s.x[0]);
        return std::abs(angle) < sys.theta ? 2 : 1;
    };
}

Strategy signal_strategy(SwitchSignal signal) {
    if (signal.symbols.empty()) throw DomainError("signal_strategy: empty signal");
    return [sig = std::move(signal)](const ProbeState& s, const MatrixSystem&) {
        return sig.symbols[s.step % sig.symbols.size()];
    };
}

double empirical_rate(const MatrixSystem& sys, const Vec2& x0, const Strategy& strategy, std::size_t T) {
    if (T == 0) throw DomainError("empirical_rate: T must be positive");
    const double n0 = norm(x0);
    if (n0 == 0.0) throw DomainError("empirical_rate: x0 must be nonzero");
    ProbeState st{{x0[0] / n0, x0[1] / n0}, 0};
    double log_growth = 0.0;
    for (; st.step < T; ++st.step) {
        st.x = mat_vec(sys.matrix(strategy(st, sys)), st.x);
        const double n = norm(st.x);
        log_growth += std::log(n);
        st.x = {st.x[0] / n, st.x[1] / n};
    }
    return std::exp(log_growth / static_cast<double>(T));
}

std::vector<ProbeRow> conjecture1_probe(double c, double beta, const std::vector<double>& thetas,
                                        const Strategy& strategy, double dbar, const ProbeOptions& options) {
    if (options.initial_vectors < 1) throw DomainError("conjecture1_probe: need at least one initial vector");
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        if (!(thetas[i] > 0.0 && thetas[i] <= std::numbers::pi / 4))
            throw DomainError("conjecture1_probe: theta must lie in (0, pi/4]");
        if (i > 0 && !(thetas[i] < thetas[i - 1])) throw DomainError("conjecture1_probe: thetas must decrease");
    }
    const double reference = std::pow(c, 1.0 / (dbar + 1.0));
    const auto per_theta = static_cast<std::size_t>(options.initial_vectors);
    std::vector<ProbeRow> rows(thetas.size() * per_theta);
    std::vector<MatrixSystem> systems;
    for (double th : thetas) systems.push_back(MatrixSystem::make(th, c, beta));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
            const std::size_t ti = i / per_theta;
            const double angle = std::numbers::pi * static_cast<double>(i % per_theta) / static_cast<double>(per_theta);
            const Vec2 x0{std::cos(angle), std::sin(angle)};
            rows[i] = {thetas[ti], angle, empirical_rate(systems[ti], x0, strategy, options.T), reference, options.T};
        }
    };
    const int workers = std::max(1, options.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    }
    return rows;
}

std::vector<ProbeRow> probe_supremum(const std::vector<ProbeRow>& rows) {
    std::vector<ProbeRow> out;
    for (const ProbeRow& r : rows) {
        if (out.empty() || out.back().theta != r.theta)
            out.push_back(r);
        else if (r.empirical_rate > out.back().empirical_rate)
            out.back() = r;
    }
    return out;
}

void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows) {
    out << "theta,x0_angle,empirical_rate,reference_rate,T\n";
    for (const ProbeRow& r : rows)
        out << format_real(r.theta) << ',' << format_real(r.x0_angle) << ',' << format_real(r.empirical_rate) << ','
            << format_real(r.reference_rate) << ',' << r.T << '\n';
}

}  // namespace betarep

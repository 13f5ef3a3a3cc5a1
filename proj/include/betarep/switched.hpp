#ifndef BETAREP_SWITCHED_HPP
#define BETAREP_SWITCHED_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "betarep/digit_word.hpp"
#include "betarep/representation.hpp"

namespace betarep {

using Vec2 = std::array<double, 2>;
/// Row-major 2x2 matrix.
using Mat2 = std::array<double, 4>;

Vec2 mat_vec(const Mat2& m, const Vec2& x);
Mat2 multiply(const Mat2& a, const Mat2& b);
double determinant(const Mat2& m);
double norm(const Vec2& x);

/// A_1 rotates by theta (clockwise), A_2 = diag(c, beta c).
struct MatrixSystem {
    double theta = 0.0;
    double c = 0.0;
    double beta = 0.0;

    /// Requires 0 < c < 1 and beta >= 1/c.
    static MatrixSystem make(double theta, double c, double beta);
    Mat2 a1() const;
    Mat2 a2() const;
    const Mat2& matrix(std::uint8_t symbol) const;

private:
    Mat2 a1_{};
    Mat2 a2_{};
};

struct MatrixTrajectory {
    std::vector<Vec2> states;  // states[0] = x0
    std::vector<double> norms;
    /// A_{sigma_T} ... A_{sigma_1}.
    Mat2 product{1.0, 0.0, 0.0, 1.0};
    /// det of product, from a Q R factorisation carried along the run.
    double product_determinant = 1.0;
    /// Product of the per-step determinants, 1 and beta c^2.
    double expected_determinant = 1.0;
};

MatrixTrajectory simulate_matrix(const MatrixSystem& sys, const Vec2& x0, const SwitchSignal& signal);

/// c^(1/(dbar_k + 1)), dbar_k the mean of the word's first k digits.
double linearized_rate(double c, const DigitWord& word, int k);

/// Strategy input: current state and step index.
struct ProbeState {
    Vec2 x;
    std::size_t step = 0;
};
using Strategy = std::function<std::uint8_t(const ProbeState&, const MatrixSystem&)>;

/// A_2 when |arctan(x_2/x_1)| < theta, else A_1.
Strategy greedy_angle_strategy();
/// Replays a signal cyclically.
Strategy signal_strategy(SwitchSignal signal);

/// (||x(T)|| / ||x0||)^(1/T) under the strategy, accumulated in log space.
double empirical_rate(const MatrixSystem& sys, const Vec2& x0, const Strategy& strategy, std::size_t T);

struct ProbeRow {
    double theta = 0.0;
    double x0_angle = 0.0;
    double empirical_rate = 0.0;
    double reference_rate = 0.0;
    std::size_t T = 0;
};

struct ProbeOptions {
    std::size_t T = 10000;
    int initial_vectors = 64;
    int workers = 1;
};

/// One row per (theta, initial angle); initial angles evenly spaced in
/// [0, pi). reference_rate = c^(1/(dbar + 1)).
std::vector<ProbeRow> conjecture1_probe(double c, double beta, const std::vector<double>& thetas,
                                        const Strategy& strategy, double dbar, const ProbeOptions& options = {});

/// Largest empirical rate per theta, in input order.
std::vector<ProbeRow> probe_supremum(const std::vector<ProbeRow>& rows);

/// theta,x0_angle,empirical_rate,reference_rate,T
void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows);

}  // namespace betarep

#endif  // BETAREP_SWITCHED_HPP

#ifndef BETAREP_COVERAGE_HPP
#define BETAREP_COVERAGE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "betarep/beta.hpp"
#include "betarep/digit_word.hpp"
#include "betarep/rational.hpp"

namespace betarep {

inline constexpr double kCoverageTolerance = 1e-14;
inline constexpr std::size_t kMaxCoverageBins = std::size_t{1} << 26;

/// Words of length k with non-negative digits summing to exactly S, in
/// lexicographic order: (0,..,0,S) first, (S,0,..,0) last.
class CompositionStream {
public:
    CompositionStream(int k, int S);
    /// Advances to the next word; false once exhausted. The first call
    /// yields the first word.
    bool next();
    const std::vector<Digit>& current() const { return digits_; }
    DigitWord word() const { return DigitWord(1, digits_); }

private:
    int k_;
    int S_;
    bool started_ = false;
    bool done_ = false;
    std::vector<Digit> digits_;
};

std::vector<DigitWord> enumerate_by_digit_sum(int k, int S);

/// C(n, r), exact; throws DomainError on overflow.
std::uint64_t binomial(int n, int r);

/// Bins of width beta^-k over [0, 1) recording min and max inserted value
/// and the digit sum of the word attaining the max.
struct CoverageGrid {
    int k = 0;
    double bin_width = 0.0;
    double scale = 0.0;  // beta^k
    double tolerance = kCoverageTolerance;
    std::vector<double> min;
    std::vector<double> max;
    std::vector<std::uint16_t> max_sum;

    std::size_t bins() const { return min.size(); }
    bool occupied(std::size_t i) const { return min[i] <= max[i]; }
    std::size_t bin_of(double v) const;
};

enum class CoverageStatus { covered, uncovered, budget_exceeded };
const char* to_string(CoverageStatus s);

struct CoverageReport {
    std::string beta_label;
    double beta = 0.0;
    int k = 0;
    /// Largest digit sum fully processed; the covering sum when covered.
    int S = -1;
    bool covered = false;
    CoverageStatus status = CoverageStatus::uncovered;
    /// Largest gap between consecutive values, including the gap up to 1.
    double worst_gap = 0.0;
    std::uint64_t sequences_examined = 0;
    std::optional<Rational> bound;
    double wall_time = 0.0;
    std::size_t bins = 0;
};

struct CoverageOptions {
    double tolerance = kCoverageTolerance;
    /// Stop with budget_exceeded once this many words have been examined
    /// (checked after each digit sum); 0 means unlimited.
    std::uint64_t sequence_budget = 0;
    int workers = 1;
    /// Written after every digit sum when non-empty.
    std::string checkpoint_path;
    /// Continue from checkpoint_path if it exists.
    bool resume = false;
};

/// Smallest S <= S_max such that the words of length k and digit sum <= S
/// cover [0, 1) with gaps at most beta^-k (plus tolerance).
CoverageReport coverage_upper_bound(const Beta& beta, int k, int S_max, const CoverageOptions& options = {});

/// Default S_max for a sweep: k * ceil(beta).
int default_sum_limit(const Beta& beta, int k);

struct SpotCheck {
    std::size_t samples = 0;
    std::size_t failures = 0;
    /// Largest u - v over samples, v the nearest word value <= u.
    double worst_distance = 0.0;
};

/// Samples u uniformly in [0,1) and finds the largest word value v <= u
/// among words of length k and digit sum <= S by binary search.
SpotCheck spot_check_coverage(const Beta& beta, int k, int S, std::size_t samples, std::uint64_t seed,
                              double tolerance = kCoverageTolerance);

struct SweepPoint {
    Beta beta;
    std::vector<CoverageReport> reports;  // k = 2..k_max
    std::optional<Rational> best_bound;
    int best_k = 0;
    std::vector<std::string> errors;
};

struct SweepOptions {
    int k_max = 8;
    /// 0 selects default_sum_limit.
    int S_max = 0;
    std::uint64_t sequence_budget = 0;
    double tolerance = kCoverageTolerance;
    int workers = 1;
};

/// Coverage bounds for k = 2..k_max at each grid point, keeping the
/// minimum. Points run in parallel; results are in grid order.
std::vector<SweepPoint> sweep(const std::vector<Beta>& grid, const SweepOptions& options);

/// beta,k,S,bound,covered,worst_gap,sequences_examined,wall_time
void write_coverage_csv_header(std::ostream& out);
void write_coverage_csv_row(std::ostream& out, const CoverageReport& report);

}  // namespace betarep

#endif  // BETAREP_COVERAGE_HPP

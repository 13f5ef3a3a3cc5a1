#include "betarep/coverage.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <thread>

#include "betarep/csv.hpp"

namespace betarep {

CompositionStream::CompositionStream(int k, int S) : k_{k}, S_{S} {
    if (k < 1) throw DomainError("enumerate_by_digit_sum: k must be >= 1");
    if (S < 0) throw DomainError("enumerate_by_digit_sum: S must be >= 0");
}

bool CompositionStream::next() {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        digits_.assign(static_cast<std::size_t>(k_), 0);
        digits_.back() = S_;
        return true;
    }
    // Rightmost nonzero digit r: move one unit to r-1 and the rest to the end.
    std::size_t r = digits_.size();
    while (r > 0 && digits_[r - 1] == 0) --r;
    if (r <= 1) {
        done_ = true;
        return false;
    }
    --r;
    const Digit rest = digits_[r] - 1;
    digits_[r] = 0;
    ++digits_[r - 1];
    digits_.back() += rest;
    return true;
}

std::vector<DigitWord> enumerate_by_digit_sum(int k, int S) {
    std::vector<DigitWord> out;
    CompositionStream stream(k, S);
    while (stream.next()) out.push_back(stream.word());
    return out;
}

std::uint64_t binomial(int n, int r) {
    if (r < 0 || n < 0 || r > n) return 0;
    r = std::min(r, n - r);
    __extension__ unsigned __int128 c = 1;
    for (int i = 1; i <= r; ++i) {
        c = c * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
        if (c > std::numeric_limits<std::uint64_t>::max()) throw DomainError("binomial overflow");
    }
    return static_cast<std::uint64_t>(c);
}

std::size_t CoverageGrid::bin_of(double v) const {
    const double x = std::floor(v * scale);
    if (x <= 0.0) return 0;
    const auto i = static_cast<std::size_t>(x);
    return std::min(i, bins() - 1);
}

const char* to_string(CoverageStatus s) {
    switch (s) {
        case CoverageStatus::covered: return "covered";
        case CoverageStatus::uncovered: return "uncovered";
        case CoverageStatus::budget_exceeded: return "budget_exceeded";
    }
    return "?";
}

namespace {

constexpr char kMagic[8] = {'B', 'R', 'C', 'O', 'V', 'C', 'K', '1'};
constexpr std::uint32_t kCheckpointVersion = 1;

struct Powers {
    std::vector<double> inv;  // inv[j] = beta^-j, j = 0..k
};

Powers powers_of(const Beta& beta, int k) {
    Powers p;
    DoubleDouble x(1.0);
    for (int j = 0; j <= k; ++j) {
        p.inv.push_back(x.to_double());
        x /= beta.value();
    }
    return p;
}

CoverageGrid make_grid(const Beta& beta, int k, double tolerance) {
    const DoubleDouble scale = pow(beta.value(), k);
    const double bins = std::ceil(scale.to_double());
    if (!(bins <= static_cast<double>(kMaxCoverageBins)))
        throw DomainError("coverage: beta^k exceeds the bin cap of 2^26; lower k");
    CoverageGrid g;
    g.k = k;
    g.scale = scale.to_double();
    g.bin_width = (DoubleDouble(1.0) / scale).to_double();
    g.tolerance = tolerance;
    // An exact integer beta^k must not gain a spurious partial bin.
    const DoubleDouble rounded = round(scale);
    const std::size_t n = abs(scale - rounded) < DoubleDouble(1e-20) ? static_cast<std::size_t>(rounded.to_double())
                                                                     : static_cast<std::size_t>(bins);
    g.min.assign(n, std::numeric_limits<double>::infinity());
    g.max.assign(n, -std::numeric_limits<double>::infinity());
    g.max_sum.assign(n, 0);
    return g;
}

void insert(CoverageGrid& g, double v, std::uint16_t sum) {
    const std::size_t i = g.bin_of(v);
    std::atomic_ref<double> lo(g.min[i]);
    double cur = lo.load(std::memory_order_relaxed);
    while (v < cur && !lo.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
    std::atomic_ref<double> hi(g.max[i]);
    cur = hi.load(std::memory_order_relaxed);
    while (v > cur) {
        if (hi.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
            // Every writer in one pass stores the same sum.
            std::atomic_ref<std::uint16_t>(g.max_sum[i]).store(sum, std::memory_order_relaxed);
            break;
        }
    }
}

/// Inserts every word of digit sum S whose value is below 1 + w, with a
/// fixed leading digit. Returns the number of complete words reached.
std::uint64_t insert_level(CoverageGrid& g, const Powers& p, int S, int lead) {
    const int k = g.k;
    const double w = p.inv[static_cast<std::size_t>(k)];
    const double limit = 1.0 + w;
    std::uint64_t count = 0;
    const auto sum = static_cast<std::uint16_t>(S);
    auto rec = [&](auto&& self, int pos, int rem, double partial) -> void {
        if (pos == k) {
            ++count;
            if (partial < 1.0) insert(g, partial, sum);
            return;
        }
        if (pos == k - 1) {
            self(self, k, 0, partial + rem * w);
            return;
        }
        const double step = p.inv[static_cast<std::size_t>(pos) + 1];
        for (int d = 0; d <= rem; ++d) {
            const double value = partial + d * step;
            // Cheapest completion puts all remaining mass in the last digit.
            if (value + (rem - d) * w >= limit) break;
            self(self, pos + 1, rem - d, value);
        }
    };
    if (k == 1) {
        if (lead == S) rec(rec, 1, 0, S * p.inv[1]);
        return count;
    }
    const double first = lead * p.inv[1];
    if (first + (S - lead) * w >= limit) return 0;
    rec(rec, 1, S - lead, first);
    return count;
}

struct CheckResult {
    bool covered = false;
    double worst_gap = 0.0;
};

CheckResult check(const CoverageGrid& g, int S) {
    const double w = g.bin_width;
    CheckResult r{true, 0.0};
    bool have_prev = false;
    double prev_max = 0.0;
    std::uint16_t prev_sum = 0;
    auto gap_ok = [&](double gap) {
        r.worst_gap = std::max(r.worst_gap, gap);
        // The max word plus one unit in its last digit was also inserted.
        return prev_sum < S || gap <= w + g.tolerance;
    };
    for (std::size_t i = 0; i < g.bins(); ++i) {
        // An empty bin shows up as a gap wider than w between its
        // neighbours; testing occupancy separately would misfire on values
        // that rounding places on the far side of a bin edge.
        if (!g.occupied(i)) continue;
        if (!have_prev) {
            if (g.min[i] != 0.0) r.covered = false;
        } else if (!gap_ok(g.min[i] - prev_max)) {
            r.covered = false;
        }
        have_prev = true;
        prev_max = g.max[i];
        prev_sum = g.max_sum[i];
    }
    if (!have_prev || !gap_ok(1.0 - prev_max)) r.covered = false;
    return r;
}

template <typename T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
bool get(std::istream& in, T& v) {
    return static_cast<bool>(in.read(reinterpret_cast<char*>(&v), sizeof v));
}

struct CheckpointState {
    int S_done = -1;
    std::uint64_t sequences = 0;
};

void write_checkpoint(const std::string& path, const Beta& beta, const CoverageGrid& g, const CheckpointState& st) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("coverage: cannot write checkpoint " + tmp);
        out.write(kMagic, sizeof kMagic);
        put(out, kCheckpointVersion);
        put(out, beta.value().hi());
        put(out, beta.value().lo());
        put(out, static_cast<std::int32_t>(g.k));
        put(out, g.tolerance);
        put(out, static_cast<std::int32_t>(st.S_done));
        put(out, st.sequences);
        put(out, static_cast<std::uint64_t>(g.bins()));
        out.write(reinterpret_cast<const char*>(g.min.data()), static_cast<std::streamsize>(g.bins() * sizeof(double)));
        out.write(reinterpret_cast<const char*>(g.max.data()), static_cast<std::streamsize>(g.bins() * sizeof(double)));
        out.write(reinterpret_cast<const char*>(g.max_sum.data()),
                  static_cast<std::streamsize>(g.bins() * sizeof(std::uint16_t)));
        if (!out) throw Error("coverage: failed writing checkpoint " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::optional<CheckpointState> read_checkpoint(const std::string& path, const Beta& beta, CoverageGrid& g) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[sizeof kMagic];
    std::uint32_t version = 0;
    double hi = 0, lo = 0, tolerance = 0;
    std::int32_t k = 0, S_done = 0;
    std::uint64_t sequences = 0, bins = 0;
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw ParseError("coverage: " + path + " is not a coverage checkpoint");
    if (!get(in, version) || version != kCheckpointVersion)
        throw ParseError("coverage: unsupported checkpoint version in " + path);
    if (!get(in, hi) || !get(in, lo) || !get(in, k) || !get(in, tolerance) || !get(in, S_done) ||
        !get(in, sequences) || !get(in, bins))
        throw ParseError("coverage: truncated checkpoint header in " + path);
    if (hi != beta.value().hi() || lo != beta.value().lo() || k != g.k || tolerance != g.tolerance ||
        bins != g.bins())
        throw ParseError("coverage: checkpoint " + path + " belongs to a different run");
    in.read(reinterpret_cast<char*>(g.min.data()), static_cast<std::streamsize>(bins * sizeof(double)));
    in.read(reinterpret_cast<char*>(g.max.data()), static_cast<std::streamsize>(bins * sizeof(double)));
    in.read(reinterpret_cast<char*>(g.max_sum.data()), static_cast<std::streamsize>(bins * sizeof(std::uint16_t)));
    if (!in) throw ParseError("coverage: truncated checkpoint grid in " + path);
    return CheckpointState{S_done, sequences};
}

}  // namespace

int default_sum_limit(const Beta& beta, int k) {
    return k * static_cast<int>(std::ceil(beta.approx()));
}

CoverageReport coverage_upper_bound(const Beta& beta, int k, int S_max, const CoverageOptions& options) {
    if (k < 1) throw DomainError("coverage: k must be >= 1");
    if (S_max < 0 || S_max > std::numeric_limits<std::uint16_t>::max())
        throw DomainError("coverage: S_max out of range");
    if (!(options.tolerance >= 0.0)) throw DomainError("coverage: tolerance must be non-negative");
    const auto started = std::chrono::steady_clock::now();
    CoverageGrid g = make_grid(beta, k, options.tolerance);
    const Powers p = powers_of(beta, k);

    CoverageReport report;
    report.beta_label = beta.label();
    report.beta = beta.approx();
    report.k = k;
    report.bins = g.bins();

    CheckpointState st;
    if (options.resume && !options.checkpoint_path.empty())
        if (auto loaded = read_checkpoint(options.checkpoint_path, beta, g)) st = *loaded;

    auto finish = [&](CoverageStatus status, const CheckResult& c) {
        report.status = status;
        report.covered = status == CoverageStatus::covered;
        report.S = st.S_done;
        report.worst_gap = c.worst_gap;
        report.sequences_examined = st.sequences;
        if (report.covered) report.bound = Rational(st.S_done, k);
        report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return report;
    };

    CheckResult last;
    if (st.S_done >= 0) {
        last = check(g, st.S_done);
        if (last.covered) return finish(CoverageStatus::covered, last);
    }
    const int workers = std::max(1, options.workers);
    for (int S = st.S_done + 1; S <= S_max; ++S) {
        std::uint64_t examined = 0;
        if (workers == 1 || S < 2) {
            for (int lead = 0; lead <= S; ++lead) examined += insert_level(g, p, S, lead);
        } else {
            std::atomic<int> next{0};
            std::atomic<std::uint64_t> total{0};
            auto work = [&] {
                for (int lead; (lead = next.fetch_add(1)) <= S;) total += insert_level(g, p, S, lead);
            };
            std::vector<std::jthread> pool;
            for (int t = 0; t < std::min(workers, S + 1); ++t) pool.emplace_back(work);
            pool.clear();
            examined = total.load();
        }
        st.S_done = S;
        st.sequences += examined;
        last = check(g, S);
        if (!options.checkpoint_path.empty()) write_checkpoint(options.checkpoint_path, beta, g, st);
        if (last.covered) return finish(CoverageStatus::covered, last);
        if (options.sequence_budget > 0 && st.sequences >= options.sequence_budget && S < S_max)
            return finish(CoverageStatus::budget_exceeded, last);
    }
    return finish(CoverageStatus::uncovered, last);
}

SpotCheck spot_check_coverage(const Beta& beta, int k, int S, std::size_t samples, std::uint64_t seed,
                              double tolerance) {
    const Powers p = powers_of(beta, k);
    std::vector<double> values;
    for (int s = 0; s <= S; ++s) {
        CompositionStream stream(k, s);
        while (stream.next()) {
            double v = 0.0;
            for (int j = 0; j < k; ++j)
                v += static_cast<double>(stream.current()[static_cast<std::size_t>(j)]) * p.inv[static_cast<std::size_t>(j) + 1];
            if (v < 1.0) values.push_back(v);
        }
    }
    std::sort(values.begin(), values.end());
    const double w = p.inv[static_cast<std::size_t>(k)];
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    SpotCheck out;
    out.samples = samples;
    for (std::size_t i = 0; i < samples; ++i) {
        const double u = uniform(rng);
        const auto it = std::upper_bound(values.begin(), values.end(), u);
        const double distance = it == values.begin() ? u + 1.0 : u - *(it - 1);
        out.worst_distance = std::max(out.worst_distance, distance);
        if (distance > w + tolerance) ++out.failures;
    }
    return out;
}

std::vector<SweepPoint> sweep(const std::vector<Beta>& grid, const SweepOptions& options) {
    if (grid.empty()) throw DomainError("sweep: empty grid");
    if (options.k_max < 2) throw DomainError("sweep: k_max must be >= 2");
    std::vector<SweepPoint> out;
    out.reserve(grid.size());
    for (const Beta& b : grid) out.push_back(SweepPoint{b, {}, std::nullopt, 0, {}});

    auto run_point = [&](SweepPoint& pt) {
        CoverageOptions co;
        co.tolerance = options.tolerance;
        co.sequence_budget = options.sequence_budget;
        for (int k = 2; k <= options.k_max; ++k) {
            try {
                const int S_max = options.S_max > 0 ? options.S_max : default_sum_limit(pt.beta, k);
                CoverageReport r = coverage_upper_bound(pt.beta, k, S_max, co);
                if (r.status == CoverageStatus::budget_exceeded)
                    pt.errors.push_back("k=" + std::to_string(k) + ": sequence budget exceeded");
                if (r.bound && (!pt.best_bound || *r.bound < *pt.best_bound)) {
                    pt.best_bound = r.bound;
                    pt.best_k = k;
                }
                pt.reports.push_back(std::move(r));
            } catch (const std::exception& e) {
                pt.errors.push_back("k=" + std::to_string(k) + ": " + e.what());
            }
        }
    };

    const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(out.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < out.size();) run_point(out[i]);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    }
    return out;
}

void write_coverage_csv_header(std::ostream& out) {
    out << "beta,k,S,bound,covered,worst_gap,sequences_examined,wall_time\n";
}

void write_coverage_csv_row(std::ostream& out, const CoverageReport& r) {
    out << format_real(r.beta) << ',' << r.k << ',' << r.S << ',' << format_optional(r.bound) << ','
        << (r.covered ? "true" : "false") << ',' << format_real(r.worst_gap) << ',' << r.sequences_examined << ','
        << format_real(r.wall_time) << '\n';
}

}  // namespace betarep

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anosovlab/crossratio.hpp"
#include "anosovlab/groups.hpp"
#include "anosovlab/representation.hpp"
#include "anosovlab/spectral.hpp"

namespace anosov {

// ---- gap scans ----

enum class GapVerdict { AnosovLike, Flat, Ambiguous };
const char* to_string(GapVerdict v);

struct GapScanOptions {
    double slope_accept = 0.05;
    double slope_flat = 0.01;
    std::size_t word_cap = kDefaultWordCap;
};

struct GapScanReport {
    int k = 0;
    int L = 0;
    std::vector<double> min_log_gap;  // index l-1 for length l
    std::vector<Word> argmin;
    double slope = 0;
    double intercept = 0;
    bool monotone = false;  // nondecreasing from length 2 on
    GapVerdict verdict = GapVerdict::Ambiguous;
};

GapScanReport anosov_gap_scan(const Representation& rep, int k, int L, const GapScanOptions& opt = {});

struct LineFit {
    double slope = 0;
    double intercept = 0;
};
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

// ---- boundary flags ----

struct BoundaryFlag {
    Word word;
    std::vector<Subspaced> spaces;  // indexed by dimension 0..d, empty where not requested
    bool certified = true;
    std::vector<int> uncertified_dims;

    const Subspaced& operator[](int dim) const;
    PartialFlagd partial_flag() const;
};

struct FlagOptions {
    // For block-diagonal Fuchsian-locus representations, dimensions that fall
    // inside an eigenvalue modulus tie are filled from the block weight order
    // (larger weight first, larger block first on equal weight) and flagged
    // uncertified. Otherwise a tie raises GapError.
    bool block_fallback = true;
};

BoundaryFlag boundary_flag(const Representation& rep, const Word& w, const std::vector<int>& dims,
                           const FlagOptions& opt = {});

// Reference-boundary fixed points of the words of length 1..L, with parabolic
// words skipped and duplicates (same attracting point) dropped. Ordered by
// first appearance in the word enumeration.
struct FixedPointSample {
    Word word;
    double angle = 0;
};
inline constexpr double kParabolicTol = 1e-8;
inline constexpr double kSameFixedPoint = 1e-9;
bool is_parabolic_or_elliptic(const Representation& ref, const Word& w);
std::vector<FixedPointSample> fixed_point_samples(const Representation& rep, int L,
                                                  std::size_t cap = kDefaultWordCap);

// ---- transversality defects ----

struct TripleDefect {
    double defect = 0;
    Verdict verdict = Verdict::Fail;
    bool certified = true;  // false when some flag came from the block fallback
};

// x^k + (y^k cap z^(d-k+1)) + z^(d-k-1)
std::vector<int> hk_dims(int d, int k);
double hk_defect(const BoundaryFlag& x, const BoundaryFlag& y, const BoundaryFlag& z, int k);
TripleDefect check_Hk(const Representation& rep, int k, const Word& x, const Word& y, const Word& z,
                      const Thresholds& t = {});

// x^(d-k-2) + (x^(d-k+1) cap y^k) + z^(k+1)
std::vector<int> ck_dims(int d, int k);
double ck_defect(const BoundaryFlag& x, const BoundaryFlag& y, const BoundaryFlag& z, int k);
TripleDefect check_Ck(const Representation& rep, int k, const Word& x, const Word& y, const Word& z,
                      const Thresholds& t = {});

enum class TripleCondition { H, C };
const char* to_string(TripleCondition c);

struct TripleScanEntry {
    int x = 0, y = 0, z = 0;  // indices into samples
    double defect = 0;
    Verdict verdict = Verdict::Fail;
    bool certified = true;
};

struct IndexCertification {
    int index = 0;
    GapVerdict verdict = GapVerdict::Ambiguous;
};

struct TripleScanReport {
    TripleCondition condition = TripleCondition::H;
    int k = 0;
    int L = 0;
    std::vector<FixedPointSample> samples;
    std::vector<TripleScanEntry> entries;  // all triples, or only the worst when keep_entries is false
    double min_defect = 1;
    double max_defect = 0;
    TripleScanEntry worst;
    int pass = 0, fail = 0, ambiguous = 0, intersection_ambiguous = 0;
    bool flags_certified = true;
    std::vector<int> uncertified_dims;
    std::vector<IndexCertification> gap_checks;  // scans at the indices the condition relies on
    bool certifiable = true;
    Verdict verdict = Verdict::Fail;
};

struct TripleScanOptions {
    Thresholds thresholds;
    bool keep_entries = false;
    int gap_scan_L = 0;  // 0 skips the gap scans
    GapScanOptions gap;
};

// All triples of distinct sample points: H uses unordered {x, y} (the
// condition is symmetric in x and y), C uses ordered triples.
TripleScanReport triple_scan(const Representation& rep, TripleCondition cond, int k, int L,
                             const TripleScanOptions& opt = {});

// Indices whose gaps the condition needs (excluding the trivial 0 and d).
std::vector<int> required_indices(TripleCondition cond, int d, int k);

// Duality: H_k(rep) at (x,y,z) against H_(d-k)(dual) at (x,y,z), and
// C_(d-k-1)(rep) at (x,y,z) against C_k(dual) at (x,z,y). A side whose flags
// are uncertified contributes the verdict "non-certifiable".
struct DualityReport {
    TripleCondition condition = TripleCondition::H;
    int k = 0, dual_k = 0;
    int triples = 0;
    int agree = 0;
    int disagree = 0;
    int non_certifiable = 0;  // both sides read from uncertified flags
    double max_primal_defect_on_disagreement = 0;
    double max_dual_defect_on_disagreement = 0;
    bool certification_agrees = true;
};
DualityReport duality_check(const Representation& rep, TripleCondition cond, int k, int L, const Thresholds& t = {});

// ---- projected hyperconvexity ----

// Lines of X = x^(d-k+1)/x^(d-k-2): [u^k cap x^(d-k+1)] for u != x and
// [x^(d-k-1)] for u = x.
Subspaced projected_line(const BoundaryFlag& x, const BoundaryFlag& u, bool u_is_x, int k);
std::vector<int> projection_base_dims(int d, int k);
double projection_defect(const Representation& rep, int k, const Word& x, const Word& u, const Word& v,
                         const Word& w);

struct ProjectionReport {
    int k = 0;
    Word base;
    int points = 0;
    int triples = 0;
    double min_defect = 1;
    std::vector<Word> worst;
    bool certified = true;
    Verdict verdict = Verdict::Fail;
};
ProjectionReport check_projection_hyperconvexity(const Representation& rep, int k, const Word& x,
                                                 const std::vector<Word>& samples, const Thresholds& t = {});

// ---- positively ratioed ----

struct PositivityReport {
    int k = 0;
    int L = 0;
    int points = 0;
    long quadruples = 0;
    long arrangements = 0;
    double min_gcr = 0;
    std::vector<Word> worst;  // in the arrangement achieving the minimum
    bool pass = false;
};
inline constexpr double kPositiveRatioMargin = 1e-9;
PositivityReport check_positively_ratioed(const Representation& rep, int k, int L);

// ---- eigenvalue identities ----

struct EigenIdentityReport {
    double pcr_value = 0;
    double gcr_value = 0;
    double lambda_ratio = 0;  // signed when both eigenvalues are real
    bool lambda_signed = false;
    double weight_period = 0;
    double pcr_rel_error = 0;
    double gcr_rel_error = 0;
};
EigenIdentityReport check_eigen_identities(const Representation& rep, int k, const Word& g, const Word& x);

// ---- collar ----

struct CollarReport {
    Word g, h;
    int k = 0;
    double lhs = 0;
    double rhs = 0;
    double weight_rhs = 0;
    bool sign_indeterminate = false;
    bool holds = false;
    double margin = 0;
};
CollarReport collar_check(const Representation& rep, int k, const Word& g, const Word& h);

struct CollarScanReport {
    int k = 0;
    int L = 0;
    long words = 0;
    long linked_pairs = 0;
    long violations = 0;
    long weight_chain_violations = 0;  // rhs < weight_rhs - 1e-9
    long sign_indeterminate = 0;
    double min_margin = 0;
    std::optional<CollarReport> tightest;
    std::vector<CollarReport> pairs;  // filled when keep_pairs
};
CollarScanReport collar_scan(const Representation& rep, int k, int L, bool keep_pairs = false);

// ---- sign positivity and counterexample ----

struct SignScanReport {
    int k = 0;
    int L = 0;
    long elements = 0;
    long non_real = 0;
    double min_signed_ratio = 0;
    Word argmin;
    bool pass = false;
};
SignScanReport sign_positivity_scan(const Representation& rep, int k, int L);

struct CounterexampleRow {
    double x = 0;
    double ratio_gamma = 0;
    double ratio_delta = 0;
    double root_length = 0;
};
std::vector<CounterexampleRow> counterexample_scan(const std::vector<double>& x_grid);
std::vector<double> log_grid(double lo, double hi, int points);

// ---- convergence of Cartan attractors ----

struct ConvergenceReport {
    int k = 0;
    std::vector<double> log_distance;  // n = 1..N
    double slope = 0;
};
inline constexpr double kDistanceFloor = 1e-300;
ConvergenceReport convergence_profile(const Matd& g, int k, int n_max);

}  // namespace anosov

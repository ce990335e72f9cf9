#include "anosovlab/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

#include "anosovlab/parallel.hpp"

namespace anosov {

const char* to_string(GapVerdict v) {
    switch (v) {
        case GapVerdict::AnosovLike: return "anosov-like";
        case GapVerdict::Flat: return "flat";
        case GapVerdict::Ambiguous: return "ambiguous";
    }
    return "?";
}

const char* to_string(TripleCondition c) { return c == TripleCondition::H ? "H" : "C"; }

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw InputError("least squares needs at least two paired points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw InputError("least squares with constant abscissae");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

GapScanReport anosov_gap_scan(const Representation& rep, int k, int L, const GapScanOptions& opt) {
    if (L < 3) throw InputError("gap scan needs L >= 3");
    if (k < 1 || k >= rep.dim) throw InputError("gap index outside [1, d-1]");
    if (ball_size(rep.rank(), L) > opt.word_cap)
        throw BudgetError("word ball of radius " + std::to_string(L) + " exceeds the cap");
    GapScanReport r;
    r.k = k;
    r.L = L;
    std::vector<double> xs;
    for (int l = 1; l <= L; ++l) {
        const auto words = sphere(rep.rank(), l, opt.word_cap);
        const auto gaps = parallel_map(words.size(), [&](std::size_t i) {
            return std::log(singular_gap(evaluate_scaled(rep, words[i]).m, k));
        });
        std::size_t best = 0;
        for (std::size_t i = 1; i < gaps.size(); ++i)
            if (gaps[i] < gaps[best]) best = i;
        r.min_log_gap.push_back(gaps[best]);
        r.argmin.push_back(words[best]);
        xs.push_back(l);
    }
    const LineFit fit = least_squares(xs, r.min_log_gap);
    r.slope = fit.slope;
    r.intercept = fit.intercept;
    r.monotone = true;
    for (int l = 2; l < L; ++l)
        if (r.min_log_gap[l] < r.min_log_gap[l - 1]) r.monotone = false;
    if (r.slope > opt.slope_accept && r.monotone)
        r.verdict = GapVerdict::AnosovLike;
    else if (r.slope < opt.slope_flat)
        r.verdict = GapVerdict::Flat;
    else
        r.verdict = GapVerdict::Ambiguous;
    return r;
}

const Subspaced& BoundaryFlag::operator[](int dim) const {
    if (dim < 0 || dim >= int(spaces.size()) || spaces[dim].ambient() == 0)
        throw DimensionError("boundary flag has no space of dimension " + std::to_string(dim));
    return spaces[dim];
}

PartialFlagd BoundaryFlag::partial_flag() const {
    std::vector<Subspaced> parts;
    for (const auto& s : spaces)
        if (s.ambient() != 0) parts.push_back(s);
    return PartialFlagd(std::move(parts));
}

namespace {

bool block_diagonal(const Matd& m, const std::vector<int>& blocks) {
    int o = 0;
    const double tol = 1e-12 * m.norm();
    for (int b : blocks) {
        if (m.block(o, 0, b, o).norm() > tol) return false;
        if (m.block(o, o + b, b, m.cols() - o - b).norm() > tol) return false;
        o += b;
    }
    return true;
}

// Eigenlines of every block ordered by descending modulus, ties broken by
// block order.
std::vector<Vecd> block_weight_order(const Matd& m, const std::vector<int>& blocks, int d) {
    struct Line {
        double log_modulus;
        int block;
        Vecd v;
    };
    std::vector<Line> lines;
    int o = 0;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const int b = blocks[bi];
        const Matd blk = m.block(o, o, b, b);
        const auto spec = eig_by_modulus(blk);
        for (const auto& c : spec.clusters) {
            if (c.count != 1) throw GapError("block has an internal eigenvalue modulus tie", int(c.first), 1.0);
            Vecd v = Vecd::Zero(d);
            v.segment(o, b) = c.basis.basis().col(0);
            lines.push_back({std::log(c.modulus), int(bi), v});
        }
        o += b;
    }
    std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.log_modulus > b.log_modulus; });
    for (std::size_t i = 0; i < lines.size();) {
        std::size_t j = i + 1;
        while (j < lines.size() && lines[j - 1].log_modulus - lines[j].log_modulus <= kModulusTieTol) ++j;
        std::stable_sort(lines.begin() + long(i), lines.begin() + long(j),
                         [](const Line& a, const Line& b) { return a.block < b.block; });
        i = j;
    }
    std::vector<Vecd> out;
    for (auto& l : lines) out.push_back(std::move(l.v));
    return out;
}

}  // namespace

BoundaryFlag boundary_flag(const Representation& rep, const Word& w, const std::vector<int>& dims, const FlagOptions& opt) {
    const int d = rep.dim;
    if (w.empty()) throw InputError("the identity has no fixed point");
    BoundaryFlag f;
    f.word = w;
    f.spaces.resize(d + 1);
    std::vector<int> sorted(dims.begin(), dims.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int k : sorted)
        if (k < 0 || k > d) throw InputError("flag dimension " + std::to_string(k) + " outside [0, d]");
    const Matd m = evaluate_scaled(rep, w).m;

    std::vector<Index> idx(sorted.begin(), sorted.end());
    try {
        auto spaces = attracting_spaces(m, idx);
        for (std::size_t i = 0; i < sorted.size(); ++i) f.spaces[sorted[i]] = std::move(spaces[i]);
        f.partial_flag();
        return f;
    } catch (const GapError& e) {
        if (!opt.block_fallback || rep.blocks.empty() || !block_diagonal(m, rep.blocks)) throw;
    }

    const auto order = block_weight_order(m, rep.blocks, d);
    std::vector<std::complex<double>> moduli;
    {
        const auto spec = eig_by_modulus(m);
        moduli = spec.values;
    }
    for (int k : sorted) {
        if (k == 0) {
            f.spaces[0] = Subspaced::zero(d);
            continue;
        }
        Matd cols(d, k);
        for (int i = 0; i < k; ++i) cols.col(i) = order[i];
        f.spaces[k] = Subspaced::span(cols);
        if (k < d && !(modulus_ratio(moduli, k) > 1 + kEigenGapTol)) {
            f.certified = false;
            f.uncertified_dims.push_back(k);
        }
    }
    f.partial_flag();
    return f;
}

bool is_parabolic_or_elliptic(const Representation& ref, const Word& w) {
    const Eigen::Matrix2d m = evaluate(ref, w);
    return std::abs(m.trace()) <= 2 + kParabolicTol;
}

std::vector<FixedPointSample> fixed_point_samples(const Representation& rep, int L, std::size_t cap) {
    const Representation& ref = rep.ref();
    std::vector<FixedPointSample> out;
    for (const Word& w : words_of_length(rep.rank(), L, cap)) {
        if (w.empty() || is_parabolic_or_elliptic(ref, w)) continue;
        const BoundaryPoint p = boundary_point(ref, w);
        bool seen = false;
        for (const auto& s : out)
            if (circle_distance(s.angle, p.angle) <= kSameFixedPoint) {
                seen = true;
                break;
            }
        if (!seen) out.push_back({w, p.angle});
    }
    return out;
}

namespace {

int clamp_dim(int v, int d) { return std::max(0, std::min(d, v)); }

void check_k(int d, int k) {
    if (k < 1 || k >= d) throw InputError("index k outside [1, d-1]");
}

TripleDefect make_triple(double defect, const Thresholds& t, bool certified) {
    return {defect, classify(defect, t), certified};
}

// Sum of the parts, or 0 when the ranks overshoot the ambient dimension.
double defect_or_zero(const std::vector<Subspaced>& parts) {
    Index s = 0;
    for (const auto& p : parts) s += p.rank();
    if (s > parts.front().ambient()) return 0;
    return direct_sum_defect(parts);
}

}  // namespace

std::vector<int> hk_dims(int d, int k) {
    check_k(d, k);
    return {k, clamp_dim(d - k + 1, d), clamp_dim(d - k - 1, d)};
}

double hk_defect(const BoundaryFlag& x, const BoundaryFlag& y, const BoundaryFlag& z, int k) {
    const int d = int(x.spaces.size()) - 1;
    check_k(d, k);
    const Subspaced mid = intersect(y[k], z[d - k + 1]);
    if (mid.rank() != 1) return 0;
    return defect_or_zero({x[k], mid, z[d - k - 1]});
}

namespace {

void require_distinct(const Representation& rep, const Word& x, const Word& y, const Word& z) {
    const Representation& ref = rep.ref();
    const double a[3] = {boundary_point(ref, x).angle, boundary_point(ref, y).angle, boundary_point(ref, z).angle};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (circle_distance(a[i], a[j]) <= kSameFixedPoint)
                throw PreconditionError("triple check needs pairwise distinct fixed points");
}

}  // namespace

TripleDefect check_Hk(const Representation& rep, int k, const Word& x, const Word& y, const Word& z, const Thresholds& t) {
    const auto dims = hk_dims(rep.dim, k);
    require_distinct(rep, x, y, z);
    const auto fx = boundary_flag(rep, x, dims), fy = boundary_flag(rep, y, dims), fz = boundary_flag(rep, z, dims);
    return make_triple(hk_defect(fx, fy, fz, k), t, fx.certified && fy.certified && fz.certified);
}

std::vector<int> ck_dims(int d, int k) {
    check_k(d, k);
    if (d - k - 2 < 0) throw InputError("C_k needs k <= d-2");
    return {d - k - 2, d - k + 1, k, k + 1};
}

double ck_defect(const BoundaryFlag& x, const BoundaryFlag& y, const BoundaryFlag& z, int k) {
    const int d = int(x.spaces.size()) - 1;
    check_k(d, k);
    const Subspaced mid = intersect(x[d - k + 1], y[k]);
    if (mid.rank() != 1) return 0;
    return defect_or_zero({x[d - k - 2], mid, z[k + 1]});
}

TripleDefect check_Ck(const Representation& rep, int k, const Word& x, const Word& y, const Word& z, const Thresholds& t) {
    const auto dims = ck_dims(rep.dim, k);
    require_distinct(rep, x, y, z);
    const auto fx = boundary_flag(rep, x, dims), fy = boundary_flag(rep, y, dims), fz = boundary_flag(rep, z, dims);
    return make_triple(ck_defect(fx, fy, fz, k), t, fx.certified && fy.certified && fz.certified);
}

std::vector<int> required_indices(TripleCondition cond, int d, int k) {
    const auto dims = cond == TripleCondition::H ? hk_dims(d, k) : ck_dims(d, k);
    std::set<int> s;
    for (int v : dims)
        if (v > 0 && v < d) s.insert(v);
    return {s.begin(), s.end()};
}

namespace {

std::vector<BoundaryFlag> sample_flags(const Representation& rep, const std::vector<FixedPointSample>& samples,
                                       const std::vector<int>& dims) {
    return parallel_map(samples.size(), [&](std::size_t i) { return boundary_flag(rep, samples[i].word, dims); });
}

struct TripleJob {
    int x, y, z;
};

std::vector<TripleJob> triple_jobs(TripleCondition cond, int n) {
    std::vector<TripleJob> jobs;
    for (int z = 0; z < n; ++z)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (x == y || x == z || y == z) continue;
                if (cond == TripleCondition::H && y < x) continue;
                jobs.push_back({x, y, z});
            }
    return jobs;
}

}  // namespace

TripleScanReport triple_scan(const Representation& rep, TripleCondition cond, int k, int L, const TripleScanOptions& opt) {
    const int d = rep.dim;
    TripleScanReport r;
    r.condition = cond;
    r.k = k;
    r.L = L;
    const auto dims = cond == TripleCondition::H ? hk_dims(d, k) : ck_dims(d, k);
    r.samples = fixed_point_samples(rep, L);
    const auto flags = sample_flags(rep, r.samples, dims);
    std::set<int> uncertified;
    for (const auto& f : flags)
        for (int u : f.uncertified_dims) uncertified.insert(u);
    r.uncertified_dims.assign(uncertified.begin(), uncertified.end());
    r.flags_certified = uncertified.empty();

    const auto jobs = triple_jobs(cond, int(r.samples.size()));
    const auto results = parallel_map(jobs.size(), [&](std::size_t i) {
        const auto& j = jobs[i];
        TripleScanEntry e{j.x, j.y, j.z, 0, Verdict::Ambiguous, true};
        e.certified = flags[j.x].certified && flags[j.y].certified && flags[j.z].certified;
        try {
            e.defect = cond == TripleCondition::H ? hk_defect(flags[j.x], flags[j.y], flags[j.z], k)
                                                  : ck_defect(flags[j.x], flags[j.y], flags[j.z], k);
            e.verdict = classify(e.defect, opt.thresholds);
        } catch (const AmbiguityError&) {
            e.defect = std::numeric_limits<double>::quiet_NaN();
            e.verdict = Verdict::Ambiguous;
        }
        return e;
    });
    bool first = true;
    for (const auto& e : results) {
        if (std::isnan(e.defect)) {
            ++r.intersection_ambiguous;
            ++r.ambiguous;
            continue;
        }
        switch (e.verdict) {
            case Verdict::Pass: ++r.pass; break;
            case Verdict::Fail: ++r.fail; break;
            case Verdict::Ambiguous: ++r.ambiguous; break;
        }
        if (first || e.defect < r.min_defect) {
            r.min_defect = e.defect;
            r.worst = e;
        }
        r.max_defect = std::max(r.max_defect, e.defect);
        first = false;
    }
    if (opt.keep_entries) r.entries = results;

    if (opt.gap_scan_L > 0) {
        for (int idx : required_indices(cond, d, k)) {
            const auto scan = anosov_gap_scan(rep, idx, opt.gap_scan_L, opt.gap);
            r.gap_checks.push_back({idx, scan.verdict});
            if (scan.verdict != GapVerdict::AnosovLike) r.certifiable = false;
        }
    }
    if (!r.flags_certified) r.certifiable = false;

    if (r.fail > 0)
        r.verdict = Verdict::Fail;
    else if (r.ambiguous > 0)
        r.verdict = Verdict::Ambiguous;
    else
        r.verdict = Verdict::Pass;
    return r;
}

DualityReport duality_check(const Representation& rep, TripleCondition cond, int k, int L, const Thresholds& t) {
    const int d = rep.dim;
    const Representation dual = dual_rep(rep);
    DualityReport r;
    r.condition = cond;
    r.k = k;
    // Primal index k pairs with dual index d-k for H and d-k-1 for C.
    r.dual_k = cond == TripleCondition::H ? d - k : d - k - 1;
    const auto dims = cond == TripleCondition::H ? hk_dims(d, k) : ck_dims(d, k);
    const auto dual_dims = cond == TripleCondition::H ? hk_dims(d, r.dual_k) : ck_dims(d, r.dual_k);
    const auto samples = fixed_point_samples(rep, L);
    const auto pf = sample_flags(rep, samples, dims);
    const auto df = sample_flags(dual, samples, dual_dims);
    const auto jobs = triple_jobs(TripleCondition::C, int(samples.size()));

    struct Outcome {
        bool agree;
        bool cert_agree;
        double pd, dd;
        bool non_certifiable;
    };
    auto verdict_of = [&](auto&& f) {
        try {
            const double v = f();
            return std::pair{classify(v, t), v};
        } catch (const AmbiguityError&) {
            return std::pair{Verdict::Ambiguous, std::numeric_limits<double>::quiet_NaN()};
        }
    };
    const auto out = parallel_map(jobs.size(), [&](std::size_t i) {
        const auto& j = jobs[i];
        std::pair<Verdict, double> a, b;
        bool pc, dc;
        if (cond == TripleCondition::H) {
            a = verdict_of([&] { return hk_defect(pf[j.x], pf[j.y], pf[j.z], k); });
            b = verdict_of([&] { return hk_defect(df[j.x], df[j.y], df[j.z], r.dual_k); });
            pc = pf[j.x].certified && pf[j.y].certified && pf[j.z].certified;
            dc = df[j.x].certified && df[j.y].certified && df[j.z].certified;
        } else {
            a = verdict_of([&] { return ck_defect(pf[j.x], pf[j.y], pf[j.z], k); });
            b = verdict_of([&] { return ck_defect(df[j.x], df[j.z], df[j.y], r.dual_k); });
            pc = pf[j.x].certified && pf[j.y].certified && pf[j.z].certified;
            dc = df[j.x].certified && df[j.z].certified && df[j.y].certified;
        }
        // A triple read from uncertified flags has no verdict on that side.
        const bool agree = (pc && dc) ? a.first == b.first : pc == dc;
        return Outcome{agree, pc == dc, a.second, b.second, !pc && !dc};
    });
    for (const auto& o : out) {
        ++r.triples;
        if (!o.cert_agree) r.certification_agrees = false;
        if (o.non_certifiable) ++r.non_certifiable;
        if (o.agree) {
            ++r.agree;
        } else {
            ++r.disagree;
            r.max_primal_defect_on_disagreement = std::max(r.max_primal_defect_on_disagreement, o.pd);
            r.max_dual_defect_on_disagreement = std::max(r.max_dual_defect_on_disagreement, o.dd);
        }
    }
    return r;
}

std::vector<int> projection_base_dims(int d, int k) {
    check_k(d, k);
    if (d - k - 2 < 0) throw InputError("projected hyperconvexity needs k <= d-2");
    return {d - k - 2, d - k - 1, d - k + 1};
}

Subspaced projected_line(const BoundaryFlag& x, const BoundaryFlag& u, bool u_is_x, int k) {
    const int d = int(x.spaces.size()) - 1;
    const Subspaced& lo = x[d - k - 2];
    const Subspaced& hi = x[d - k + 1];
    if (u_is_x) return quotient_project(x[d - k - 1], lo, hi);
    const Subspaced line = intersect(u[k], hi);
    if (line.rank() != 1) throw PreconditionError("sample space meets the base space in more than a line");
    return quotient_project(line, lo, hi);
}

namespace {

double three_line_defect(const Subspaced& a, const Subspaced& b, const Subspaced& c) {
    if (a.rank() != 1 || b.rank() != 1 || c.rank() != 1) return 0;
    return direct_sum_defect(std::vector<Subspaced>{a, b, c});
}

}  // namespace

double projection_defect(const Representation& rep, int k, const Word& x, const Word& u, const Word& v, const Word& w) {
    const Representation& ref = rep.ref();
    const std::array<const Word*, 3> pts{&u, &v, &w};
    std::array<double, 3> angle{};
    for (int i = 0; i < 3; ++i) angle[i] = boundary_point(ref, *pts[i]).angle;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (circle_distance(angle[i], angle[j]) <= kSameFixedPoint)
                throw PreconditionError("projected hyperconvexity: repeated point in the triple");
    const double xa = boundary_point(ref, x).angle;
    std::vector<int> dims = projection_base_dims(rep.dim, k);
    dims.push_back(k);
    const BoundaryFlag fx = boundary_flag(rep, x, dims);
    std::array<Subspaced, 3> lines;
    for (int i = 0; i < 3; ++i) {
        const bool is_x = circle_distance(angle[i], xa) <= kSameFixedPoint;
        lines[i] = is_x ? projected_line(fx, fx, true, k) : projected_line(fx, boundary_flag(rep, *pts[i], {k}), false, k);
    }
    return three_line_defect(lines[0], lines[1], lines[2]);
}

ProjectionReport check_projection_hyperconvexity(const Representation& rep, int k, const Word& x,
                                                 const std::vector<Word>& samples, const Thresholds& t) {
    const Representation& ref = rep.ref();
    ProjectionReport r;
    r.k = k;
    r.base = x;
    std::vector<int> dims = projection_base_dims(rep.dim, k);
    dims.push_back(k);
    const BoundaryFlag fx = boundary_flag(rep, x, dims);
    r.certified = fx.certified;
    const double xa = boundary_point(ref, x).angle;

    std::vector<Word> words{x};
    std::vector<double> angles{xa};
    for (const Word& w : samples) {
        if (w.empty() || is_parabolic_or_elliptic(ref, w)) continue;
        const double a = boundary_point(ref, w).angle;
        bool seen = false;
        for (double b : angles)
            if (circle_distance(a, b) <= kSameFixedPoint) seen = true;
        if (!seen) {
            words.push_back(w);
            angles.push_back(a);
        }
    }
    r.points = int(words.size());
    const auto lines = parallel_map(words.size(), [&](std::size_t i) {
        if (i == 0) return projected_line(fx, fx, true, k);
        const BoundaryFlag fu = boundary_flag(rep, words[i], {k});
        return projected_line(fx, fu, false, k);
    });
    std::vector<std::array<int, 3>> jobs;
    for (int a = 0; a < r.points; ++a)
        for (int b = a + 1; b < r.points; ++b)
            for (int c = b + 1; c < r.points; ++c) jobs.push_back({a, b, c});
    const auto defects = parallel_map(jobs.size(), [&](std::size_t i) {
        return three_line_defect(lines[jobs[i][0]], lines[jobs[i][1]], lines[jobs[i][2]]);
    });
    r.triples = int(jobs.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < defects.size(); ++i)
        if (defects[i] < defects[best]) best = i;
    if (!defects.empty()) {
        r.min_defect = defects[best];
        for (int j : jobs[best]) r.worst.push_back(words[j]);
    }
    r.verdict = classify(r.min_defect, t);
    return r;
}

PositivityReport check_positively_ratioed(const Representation& rep, int k, int L) {
    const int d = rep.dim;
    check_k(d, k);
    PositivityReport r;
    r.k = k;
    r.L = L;
    auto samples = fixed_point_samples(rep, L);
    std::stable_sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.angle < b.angle; });
    const auto flags = sample_flags(rep, samples, {k, d - k});
    for (const auto& f : flags)
        if (!f.certified) throw GapError("positively ratioed check needs certified gaps at k and d-k", k, 1.0);
    const int n = int(samples.size());
    r.points = n;
    std::vector<std::array<int, 4>> quads;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int e = c + 1; e < n; ++e) quads.push_back({a, b, c, e});
    r.quadruples = long(quads.size());
    struct Best {
        double value;
        std::array<int, 4> order;
    };
    const auto best = parallel_map(quads.size(), [&](std::size_t i) {
        const auto& q = quads[i];
        Best b{std::numeric_limits<double>::infinity(), q};
        // Sorted angles are in cyclic order; every rotation of either
        // orientation is cyclically ordered too.
        for (int rev = 0; rev < 2; ++rev)
            for (int rot = 0; rot < 4; ++rot) {
                std::array<int, 4> o;
                for (int j = 0; j < 4; ++j) o[j] = rev ? q[(rot + 4 - j) % 4] : q[(rot + j) % 4];
                const double v =
                    gcr(flags[o[0]][k], flags[o[1]][d - k], flags[o[2]][d - k], flags[o[3]][k]).value();
                if (v < b.value) b = {v, o};
            }
        return b;
    });
    r.arrangements = 8 * r.quadruples;
    r.min_gcr = std::numeric_limits<double>::infinity();
    for (const auto& b : best)
        if (b.value < r.min_gcr) {
            r.min_gcr = b.value;
            r.worst.clear();
            for (int j : b.order) r.worst.push_back(samples[j].word);
        }
    r.pass = r.min_gcr > 1 + kPositiveRatioMargin;
    return r;
}

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min()); }

}  // namespace

EigenIdentityReport check_eigen_identities(const Representation& rep, int k, const Word& g, const Word& x) {
    const int d = rep.dim;
    check_k(d, k);
    const Representation& ref = rep.ref();
    const BoundaryPoint xp = boundary_point(ref, x);
    const auto gfix = rp1_fixed_points(Eigen::Matrix2d(evaluate(ref, g)));
    if (circle_distance(xp.angle, gfix.first.angle) <= kSameFixedPoint ||
        circle_distance(xp.angle, gfix.second.angle) <= kSameFixedPoint)
        throw PreconditionError("eigen identities: x coincides with a fixed point of g");

    const Matd gm = evaluate_scaled(rep, g).m;
    const Word gi = inverse(g);
    const auto gminus = boundary_flag(rep, gi, {k, d - k - 1, d - k, d - k + 1}, {false});
    const auto gplus = boundary_flag(rep, g, {k}, {false});
    const auto fx = boundary_flag(rep, x, {k, d - k}, {false});

    EigenIdentityReport r;
    const auto gaps = eigenvalue_ratios(gm, k);
    r.lambda_signed = gaps.lambda_ratio_signed.has_value();
    r.lambda_ratio = r.lambda_signed ? *gaps.lambda_ratio_signed : gaps.lambda_ratio_modulus;
    r.weight_period = std::exp(length_functions(gm, k).weight_length);

    const Subspaced& lo = gminus[d - k - 1];
    const Subspaced& hi = gminus[d - k + 1];
    const Subspaced gx = fx[k].image(gm);
    const auto pcr_value = pcr_quotient(lo, hi, gminus[d - k], intersect(fx[k], hi), intersect(gx, hi),
                                        intersect(gplus[k], hi));
    r.pcr_value = pcr_value.value();
    r.gcr_value = gcr(gminus[k], fx[d - k], fx[d - k].image(gm), gplus[k]).value();
    r.pcr_rel_error = rel_err(r.pcr_value, r.lambda_ratio);
    r.gcr_rel_error = rel_err(r.gcr_value, r.weight_period);
    return r;
}

namespace {

struct WordSpectrum {
    double weight_length = 0;
    std::optional<double> inverse_ratio_signed;  // lambda_(k+1)/lambda_k
    double inverse_ratio_modulus = 0;
};

WordSpectrum word_spectrum(const Representation& rep, const Word& w, int k) {
    const Matd m = evaluate_scaled(rep, w).m;
    const auto spec = eig_by_modulus(m);
    WordSpectrum s;
    s.weight_length = length_functions_from(spec.values, k).weight_length;
    const auto& a = spec.values[k - 1];
    const auto& b = spec.values[k];
    s.inverse_ratio_modulus = std::abs(b) / std::abs(a);
    if (is_real(a) && is_real(b)) s.inverse_ratio_signed = b.real() / a.real();
    return s;
}

CollarReport collar_from(const Word& g, const Word& h, int k, const WordSpectrum& sg, const WordSpectrum& sh) {
    CollarReport r;
    r.g = g;
    r.h = h;
    r.k = k;
    r.lhs = std::exp(sg.weight_length);
    const double ratio = sh.inverse_ratio_signed.value_or(sh.inverse_ratio_modulus);
    r.sign_indeterminate = !sh.inverse_ratio_signed.has_value();
    r.rhs = 1 / (1 - ratio);
    r.weight_rhs = 1 / (1 - std::exp(-sh.weight_length));
    r.margin = r.lhs - r.rhs;
    r.holds = r.margin > 0;
    return r;
}

}  // namespace

CollarReport collar_check(const Representation& rep, int k, const Word& g, const Word& h) {
    check_k(rep.dim, k);
    if (!is_linked(g, h, rep.ref())) throw PreconditionError("collar check needs a linked pair");
    return collar_from(g, h, k, word_spectrum(rep, g, k), word_spectrum(rep, h, k));
}

CollarScanReport collar_scan(const Representation& rep, int k, int L, bool keep_pairs) {
    check_k(rep.dim, k);
    const Representation& ref = rep.ref();
    CollarScanReport r;
    r.k = k;
    r.L = L;
    std::vector<Word> words;
    for (const Word& w : words_of_length(rep.rank(), L))
        if (!w.empty() && !is_parabolic_or_elliptic(ref, w)) words.push_back(w);
    r.words = long(words.size());
    struct Data {
        double plus, minus;
        WordSpectrum spec;
    };
    const auto data = parallel_map(words.size(), [&](std::size_t i) {
        const auto fp = rp1_fixed_points(Eigen::Matrix2d(evaluate(ref, words[i])));
        return Data{fp.first.angle, fp.second.angle, word_spectrum(rep, words[i], k)};
    });
    const std::size_t n = words.size();
    const auto rows = parallel_map(n, [&](std::size_t i) {
        std::vector<CollarReport> out;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::vector<double> pts{data[i].minus, data[j].minus, data[i].plus, data[j].plus};
            bool distinct = true;
            for (int a = 0; a < 4 && distinct; ++a)
                for (int b = a + 1; b < 4; ++b)
                    if (circle_distance(pts[a], pts[b]) <= kBoundarySeparation) distinct = false;
            if (!distinct || !is_cyclically_ordered(pts)) continue;
            out.push_back(collar_from(words[i], words[j], k, data[i].spec, data[j].spec));
        }
        return out;
    });
    bool first = true;
    for (const auto& row : rows)
        for (const auto& c : row) {
            ++r.linked_pairs;
            if (!c.holds) ++r.violations;
            if (c.rhs < c.weight_rhs - 1e-9) ++r.weight_chain_violations;
            if (c.sign_indeterminate) ++r.sign_indeterminate;
            if (first || c.margin < r.min_margin) {
                r.min_margin = c.margin;
                r.tightest = c;
            }
            first = false;
            if (keep_pairs) r.pairs.push_back(c);
        }
    return r;
}

SignScanReport sign_positivity_scan(const Representation& rep, int k, int L) {
    check_k(rep.dim, k);
    const Representation& ref = rep.ref();
    SignScanReport r;
    r.k = k;
    r.L = L;
    std::vector<Word> words;
    for (const Word& w : words_of_length(rep.rank(), L))
        if (!w.empty() && !is_parabolic_or_elliptic(ref, w)) words.push_back(w);
    const auto gaps = parallel_map(words.size(), [&](std::size_t i) {
        return eigenvalue_ratios(Matd(evaluate_scaled(rep, words[i]).m), k);
    });
    r.elements = long(words.size());
    r.min_signed_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (!gaps[i].lambda_ratio_signed) {
            ++r.non_real;
            continue;
        }
        if (*gaps[i].lambda_ratio_signed < r.min_signed_ratio) {
            r.min_signed_ratio = *gaps[i].lambda_ratio_signed;
            r.argmin = words[i];
        }
    }
    r.pass = r.non_real == 0 && r.min_signed_ratio > 0;
    return r;
}

std::vector<CounterexampleRow> counterexample_scan(const std::vector<double>& x_grid) {
    for (double x : x_grid)
        if (!(x > 0)) throw InputError("counterexample grid must be positive");
    return parallel_map(x_grid.size(), [&](std::size_t i) {
        const Representation r = fg_rep(x_grid[i]);
        const auto sg = eigenvalue_ratios(r.generators[0], 1);
        const auto sd = eigenvalue_ratios(r.generators[1], 1);
        return CounterexampleRow{x_grid[i], sg.lambda_ratio_modulus, sd.lambda_ratio_modulus,
                                 std::log(sg.lambda_ratio_modulus)};
    });
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0) || !(hi > lo) || points < 2) throw InputError("log grid needs 0 < lo < hi and at least two points");
    std::vector<double> g;
    for (int i = 0; i < points; ++i) g.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (points - 1)));
    g.front() = lo;
    g.back() = hi;
    return g;
}

ConvergenceReport convergence_profile(const Matd& g, int k, int n_max) {
    if (n_max < 2) throw InputError("convergence profile needs n_max >= 2");
    ConvergenceReport r;
    r.k = k;
    const Subspaced target = attracting_space(g, k);
    std::vector<double> ns;
    ScaledMatrix<double> acc = ScaledMatrix<double>::from(g);
    const ScaledMatrix<double> base = acc;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) acc = acc * base;
        const double dist = grassmann_distance(cartan_attractor(acc.m, k), target);
        r.log_distance.push_back(std::log(std::max(dist, kDistanceFloor)));
        ns.push_back(n);
    }
    r.slope = least_squares(ns, r.log_distance).slope;
    return r;
}

}  // namespace anosov

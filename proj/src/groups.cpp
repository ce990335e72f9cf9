#include "anosovlab/groups.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace anosov {

Word reduce(const Word& w) {
    Word out;
    for (int l : w) {
        if (l == 0) throw InputError("letter 0 is not a generator");
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word inverse(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& l : out) l = -l;
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return reduce(w);
}

bool is_reduced(const Word& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0) return false;
        if (i > 0 && w[i] == -w[i - 1]) return false;
    }
    return true;
}

std::string word_to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (int l : w) {
        const int g = std::abs(l) - 1;
        if (g >= 26) throw InputError("at most 26 generators can be printed");
        s.push_back(char(l > 0 ? 'a' + g : 'A' + g));
    }
    return s;
}

Word parse_word(const std::string& s) {
    Word w;
    if (s == "1" || s.empty()) return w;
    for (char c : s) {
        if (c >= 'a' && c <= 'z')
            w.push_back(c - 'a' + 1);
        else if (c >= 'A' && c <= 'Z')
            w.push_back(-(c - 'A' + 1));
        else
            throw InputError(std::string("invalid letter '") + c + "' in word");
    }
    return reduce(w);
}

std::size_t ball_size(int rank, int L) {
    if (rank < 1 || L < 0) throw InputError("ball_size needs rank >= 1 and L >= 0");
    std::size_t total = 1;
    std::size_t layer = 2 * std::size_t(rank);
    for (int l = 1; l <= L; ++l) {
        total += layer;
        layer *= 2 * std::size_t(rank) - 1;
    }
    return total;
}

namespace {

void extend(std::vector<Word>& out, Word& cur, int rank, int remaining) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (int g = 1; g <= rank; ++g) {
        for (int l : {g, -g}) {
            if (!cur.empty() && cur.back() == -l) continue;
            cur.push_back(l);
            extend(out, cur, rank, remaining - 1);
            cur.pop_back();
        }
    }
}

}  // namespace

std::vector<Word> sphere(int rank, int L, std::size_t cap) {
    if (rank < 1 || L < 0) throw InputError("sphere needs rank >= 1 and L >= 0");
    const std::size_t count = L == 0 ? 1 : ball_size(rank, L) - ball_size(rank, L - 1);
    if (count > cap) throw BudgetError("word count " + std::to_string(count) + " exceeds cap " + std::to_string(cap));
    std::vector<Word> out;
    out.reserve(count);
    Word cur;
    extend(out, cur, rank, L);
    return out;
}

std::vector<Word> words_of_length(int rank, int L, std::size_t cap) {
    const std::size_t count = ball_size(rank, L);
    if (count > cap) throw BudgetError("word count " + std::to_string(count) + " exceeds cap " + std::to_string(cap));
    std::vector<Word> out;
    out.reserve(count);
    for (int l = 0; l <= L; ++l) {
        auto s = sphere(rank, l, cap);
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

namespace {

const Matd& letter_matrix(const Representation& rep, int l, std::vector<Matd>& inverses) {
    const int g = std::abs(l) - 1;
    if (g >= rep.rank()) throw InputError("generator index " + std::to_string(g + 1) + " outside the representation rank");
    if (l > 0) return rep.generators[g];
    if (inverses[g].size() == 0) inverses[g] = rep.generators[g].inverse();
    return inverses[g];
}

}  // namespace

Matd evaluate(const Representation& rep, const Word& w) {
    if (w.size() > 30) return evaluate_scaled(rep, w).value();
    std::vector<Matd> inverses(rep.rank());
    Matd m = Matd::Identity(rep.dim, rep.dim);
    for (int l : w) m = m * letter_matrix(rep, l, inverses);
    return m;
}

ScaledMatrix<double> evaluate_scaled(const Representation& rep, const Word& w) {
    std::vector<Matd> inverses(rep.rank());
    ScaledMatrix<double> acc{Matd::Identity(rep.dim, rep.dim), 0};
    for (int l : w) acc = acc * ScaledMatrix<double>::from(letter_matrix(rep, l, inverses));
    return acc;
}

double line_angle(const Eigen::Vector2d& v) {
    double a = std::atan2(v(1), v(0));
    if (a < 0) a += std::numbers::pi;
    if (a >= std::numbers::pi) a -= std::numbers::pi;
    return a;
}

double circle_distance(double a, double b) {
    double t = std::fmod(std::abs(a - b), std::numbers::pi);
    return std::min(t, std::numbers::pi - t);
}

bool is_loxodromic(const Eigen::Matrix2d& m) {
    return std::abs(m.trace()) > 2 * std::sqrt(std::abs(m.determinant())) + kLoxodromicTol;
}

namespace {

Eigen::Vector2d eigenline(const Eigen::Matrix2d& m, double lambda) {
    // Rows of m - lambda I annihilate the eigenvector; use the larger row.
    Eigen::Vector2d r0(m(0, 1), lambda - m(0, 0));
    Eigen::Vector2d r1(lambda - m(1, 1), m(1, 0));
    return r0.norm() >= r1.norm() ? r0 : r1;
}

}  // namespace

std::pair<BoundaryPoint, BoundaryPoint> rp1_fixed_points(const Eigen::Matrix2d& m) {
    if (!is_loxodromic(m)) throw DomainError("rp1_fixed_points: matrix is not loxodromic");
    const double tr = m.trace();
    const double det = m.determinant();
    const double disc = std::sqrt(tr * tr - 4 * det);
    // Stable roots: the larger modulus root without cancellation.
    const double big = (tr >= 0 ? tr + disc : tr - disc) / 2;
    const double small = det / big;
    BoundaryPoint attracting{line_angle(eigenline(m, big)), {}, true};
    BoundaryPoint repelling{line_angle(eigenline(m, small)), {}, false};
    return {attracting, repelling};
}

bool is_cyclically_ordered(const std::vector<double>& angles) {
    const std::size_t n = angles.size();
    if (n < 4) throw PreconditionError("cyclic order needs at least four points");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (circle_distance(angles[i], angles[j]) <= kBoundarySeparation)
                throw PreconditionError("cyclic order of coincident boundary points");
    std::vector<double> offset(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = std::fmod(angles[i] - angles[0], std::numbers::pi);
        if (t < 0) t += std::numbers::pi;
        offset[i] = t;
    }
    bool up = true, down = true;
    for (std::size_t i = 2; i < n; ++i) {
        if (!(offset[i] > offset[i - 1])) up = false;
        if (!(offset[i] < offset[i - 1])) down = false;
    }
    return up || down;
}

bool is_cyclically_ordered(const std::vector<BoundaryPoint>& points) {
    std::vector<double> a;
    for (const auto& p : points) a.push_back(p.angle);
    return is_cyclically_ordered(a);
}

BoundaryPoint boundary_point(const Representation& ref, const Word& w) {
    if (ref.dim != 2) throw InputError("boundary points need a 2x2 reference");
    Eigen::Matrix2d m = evaluate(ref, w);
    auto [att, rep] = rp1_fixed_points(m);
    (void)rep;
    att.source = w;
    return att;
}

bool is_linked(const Word& g, const Word& h, const Representation& ref) {
    const BoundaryPoint gp = boundary_point(ref, g), gm = boundary_point(ref, inverse(g));
    const BoundaryPoint hp = boundary_point(ref, h), hm = boundary_point(ref, inverse(h));
    return is_cyclically_ordered(std::vector<BoundaryPoint>{gm, hm, gp, hp});
}

}  // namespace anosov

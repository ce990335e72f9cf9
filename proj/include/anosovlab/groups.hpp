#pragma once

#include <string>
#include <utility>
#include <vector>

#include "anosovlab/representation.hpp"
#include "anosovlab/spectral.hpp"

namespace anosov {

// Letters are +-(i+1) for generator i; negative means inverse.
using Word = std::vector<int>;

Word reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
bool is_reduced(const Word& w);

// "aB" style: lowercase generators, uppercase inverses, "1" for the identity.
std::string word_to_string(const Word& w);
Word parse_word(const std::string& s);

inline constexpr std::size_t kDefaultWordCap = 2'000'000;

// Number of reduced words of length <= L in the free group of rank n.
std::size_t ball_size(int rank, int L);

// All reduced words of length <= L, ordered by length then by letters.
std::vector<Word> words_of_length(int rank, int L, std::size_t cap = kDefaultWordCap);
// Reduced words of length exactly L.
std::vector<Word> sphere(int rank, int L, std::size_t cap = kDefaultWordCap);

Matd evaluate(const Representation& rep, const Word& w);
ScaledMatrix<double> evaluate_scaled(const Representation& rep, const Word& w);

struct BoundaryPoint {
    double angle = 0;  // in [0, pi), direction of a line in R^2
    Word source;
    bool attracting = true;
};

inline constexpr double kLoxodromicTol = 1e-8;
inline constexpr double kBoundarySeparation = 1e-10;

double line_angle(const Eigen::Vector2d& v);
// Distance on RP^1 = R / pi Z.
double circle_distance(double a, double b);

std::pair<BoundaryPoint, BoundaryPoint> rp1_fixed_points(const Eigen::Matrix2d& m);
bool is_loxodromic(const Eigen::Matrix2d& m);

bool is_cyclically_ordered(const std::vector<double>& angles);
bool is_cyclically_ordered(const std::vector<BoundaryPoint>& points);

// Attracting fixed point of w in the reference boundary.
BoundaryPoint boundary_point(const Representation& ref, const Word& w);
bool is_linked(const Word& g, const Word& h, const Representation& ref);

}  // namespace anosov

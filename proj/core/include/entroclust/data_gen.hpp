#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace entroclust {

enum class Placement { first_s, random };

// Sparse separation vector a of a symmetric two-component mixture X = eps Z,
// eps ~ Rademacher(1/2), Z ~ N(a, I_d).
struct MixtureSpec {
    int d = 0;
    int s = 0;
    std::vector<double> a;
    double a_norm2 = 0.0;
    double a_norm_inf = 0.0;
    std::vector<int> support;
};

struct Dataset {
    int n = 0;
    int d = 0;
    std::vector<double> rows;  // row-major n x d
    std::uint64_t seed = 0;
    std::vector<int> labels;  // the eps draws (+/-1); empty if absent

    const double* row(int i) const { return rows.data() + static_cast<std::size_t>(i) * d; }
    bool has_labels() const { return !labels.empty(); }
};

// s nonzero coordinates of equal magnitude a_norm2/sqrt(s), positive signs;
// placement at the first s indices or at seeded random indices.
MixtureSpec make_spec(int d, int s, double a_norm2, Placement placement = Placement::first_s,
                      std::uint64_t seed = 0);

Dataset sample(const MixtureSpec& spec, int n, std::uint64_t seed);

// Oracle labelling sign(x^t a); zeros broken to +1.
std::vector<int> bayes_labels(const Dataset& data, const MixtureSpec& spec);

// Fraction of mismatches, minimized over a global label flip; in [0, 1/2].
double misclassification(const std::vector<int>& pred, const std::vector<int>& truth);

void save_dataset(const Dataset& data, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace entroclust

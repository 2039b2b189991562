#include "entroclust/data_gen.hpp"

#include "entroclust/errors.hpp"
#include "entroclust/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace entroclust {

namespace {

// Stream ids carved out of the per-dataset key space.
constexpr std::uint64_t kSupportStream = 0xa11ce5;

void append_double(std::string& out, double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip
    out.append(buf, ptr);
}

}  // namespace

MixtureSpec make_spec(int d, int s, double a_norm2, Placement placement, std::uint64_t seed) {
    if (d < 1 || s < 1) throw std::domain_error("make_spec: d and s must be positive");
    if (s > d) throw std::domain_error("make_spec: s > d");
    if (!(a_norm2 > 0.0)) throw std::domain_error("make_spec: a_norm2 must be positive");

    MixtureSpec spec;
    spec.d = d;
    spec.s = s;
    spec.a.assign(d, 0.0);
    spec.support.resize(s);
    if (placement == Placement::first_s) {
        std::iota(spec.support.begin(), spec.support.end(), 0);
    } else {
        // Seeded Fisher-Yates prefix over the index range.
        std::vector<int> idx(d);
        std::iota(idx.begin(), idx.end(), 0);
        RngStream rng(seed, kSupportStream);
        for (int i = 0; i < s; ++i) {
            const int j = i + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(d - i));
            std::swap(idx[i], idx[j]);
        }
        std::copy(idx.begin(), idx.begin() + s, spec.support.begin());
        std::sort(spec.support.begin(), spec.support.end());
    }
    const double magnitude = a_norm2 / std::sqrt(static_cast<double>(s));
    for (int i : spec.support) spec.a[i] = magnitude;
    spec.a_norm2 = a_norm2;
    spec.a_norm_inf = magnitude;
    return spec;
}

Dataset sample(const MixtureSpec& spec, int n, std::uint64_t seed) {
    if (n < 1) throw std::domain_error("sample: n must be >= 1");
    Dataset data;
    data.n = n;
    data.d = spec.d;
    data.seed = seed;
    data.rows.resize(static_cast<std::size_t>(n) * spec.d);
    data.labels.resize(n);
    for (int i = 0; i < n; ++i) {
        RngStream rng(seed, static_cast<std::uint64_t>(i));
        const int eps = rng.next_sign();
        data.labels[i] = eps;
        double* row = data.rows.data() + static_cast<std::size_t>(i) * spec.d;
        for (int j = 0; j < spec.d; ++j) row[j] = eps * (spec.a[j] + rng.next_normal());
    }
    return data;
}

std::vector<int> bayes_labels(const Dataset& data, const MixtureSpec& spec) {
    if (data.d != spec.d) throw std::domain_error("bayes_labels: dimension mismatch");
    std::vector<int> out(data.n);
    for (int i = 0; i < data.n; ++i) {
        const double* row = data.row(i);
        double dot = 0.0;
        for (int j : spec.support) dot += row[j] * spec.a[j];
        out[i] = dot < 0.0 ? -1 : 1;
    }
    return out;
}

double misclassification(const std::vector<int>& pred, const std::vector<int>& truth) {
    if (pred.size() != truth.size() || pred.empty())
        throw std::domain_error("misclassification: size mismatch");
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) mismatches += pred[i] != truth[i];
    const double rate = static_cast<double>(mismatches) / pred.size();
    return std::min(rate, 1.0 - rate);
}

void save_dataset(const Dataset& data, const std::string& path) {
    std::string out;
    out.reserve(data.rows.size() * 12);
    out += "# n=" + std::to_string(data.n) + " d=" + std::to_string(data.d) +
           " seed=" + std::to_string(data.seed) + "\n";
    if (data.has_labels()) out += "# labels=present\n";
    for (int i = 0; i < data.n; ++i) {
        const double* row = data.row(i);
        for (int j = 0; j < data.d; ++j) {
            if (j) out += ',';
            append_double(out, row[j]);
        }
        if (data.has_labels()) {
            out += ',';
            out += data.labels[i] > 0 ? "1" : "-1";
        }
        out += '\n';
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("save_dataset: cannot open " + path);
    file << out;
    if (!file) throw std::runtime_error("save_dataset: write failed for " + path);
}

Dataset load_dataset(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("load_dataset: cannot open " + path);

    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(file, line)) throw parse_error("empty file", 1, 1);

    Dataset data;
    int n = 0, d = 0;
    unsigned long long seed = 0;
    if (std::sscanf(line.c_str(), "# n=%d d=%d seed=%llu", &n, &d, &seed) != 3 || n < 1 || d < 1)
        throw parse_error("malformed header, expected '# n=<n> d=<d> seed=<seed>'", 1, 1);
    data.n = n;
    data.d = d;
    data.seed = seed;

    bool labelled = false;
    std::streampos after_header = file.tellg();
    if (std::getline(file, line) && line == "# labels=present") {
        labelled = true;
        ++lineno;
    } else {
        file.clear();
        file.seekg(after_header);
    }

    data.rows.resize(static_cast<std::size_t>(n) * d);
    if (labelled) data.labels.resize(n);
    const int cols = d + (labelled ? 1 : 0);

    for (int i = 0; i < n; ++i) {
        ++lineno;
        if (!std::getline(file, line)) throw parse_error("unexpected end of file", lineno, 1);
        const char* p = line.data();
        const char* end = p + line.size();
        for (int j = 0; j < cols; ++j) {
            if (j) {
                if (p >= end || *p != ',')
                    throw parse_error("expected ','", lineno,
                                      static_cast<std::size_t>(p - line.data()) + 1);
                ++p;
            }
            double value = 0.0;
            auto [next, ec] = std::from_chars(p, end, value);
            if (ec != std::errc())
                throw parse_error("invalid number", lineno,
                                  static_cast<std::size_t>(p - line.data()) + 1);
            if (j < d)
                data.rows[static_cast<std::size_t>(i) * d + j] = value;
            else
                data.labels[i] = value < 0.0 ? -1 : 1;
            p = next;
        }
        if (p != end)
            throw parse_error("trailing characters (wrong column count?)", lineno,
                              static_cast<std::size_t>(p - line.data()) + 1);
    }
    return data;
}

}  // namespace entroclust

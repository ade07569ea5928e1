#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace inkspect {

struct PixelCoord {
    int row = 0;
    int col = 0;
    friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

// n spectral samples of dimension d (== bands), row-major, with the source
// pixel of each row when the samples came from an image.
struct SampleMatrix {
    int n = 0;
    int d = 0;
    std::vector<double> values;           // n*d, row-major
    std::vector<PixelCoord> provenance;   // size n, or empty for synthetic data

    std::span<const double> row(int i) const {
        return {values.data() + static_cast<std::size_t>(i) * d, static_cast<std::size_t>(d)};
    }
};

struct HardClusterResult {
    int k = 0;
    std::vector<double> centroids;  // k*d, row-major
    std::vector<int> labels;        // size n, values in [0, k)
    double objective = 0.0;         // sum of squared distances to assigned centroid
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;  // one entry per Lloyd iteration

    std::span<const double> centroid(int j) const;
    int d() const { return k > 0 ? static_cast<int>(centroids.size()) / k : 0; }
};

struct FuzzyClusterResult {
    int k = 0;
    std::vector<double> centroids;    // k*d
    std::vector<double> memberships;  // n*k, rows sum to 1
    double fuzziness = 2.0;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;

    double membership(int i, int j) const {
        return memberships[static_cast<std::size_t>(i) * k + j];
    }
};

enum class Linkage { Single, Complete, Average };

std::string linkage_name(Linkage linkage);
std::optional<Linkage> linkage_from_name(const std::string& name);

// One agglomerative merge. Original samples are clusters 0..n-1, the t-th
// merge creates cluster n+t.
struct DendrogramMerge {
    int id_a = 0;  // id_a < id_b
    int id_b = 0;
    double distance = 0.0;
    int new_size = 0;
    friend bool operator==(const DendrogramMerge&, const DendrogramMerge&) = default;
};

struct Dendrogram {
    int n = 0;  // number of original samples
    Linkage linkage = Linkage::Average;
    std::vector<DendrogramMerge> merges;  // exactly n-1 entries
};

struct KMeansOptions {
    std::uint64_t seed = 0;
    int max_iter = 300;
    double tol = 1e-5;  // stop when max centroid movement (Euclidean) <= tol
    int restarts = 10;  // k-means++ restarts, best objective kept
    // When set (size k*d), runs a single Lloyd pass from these centroids
    // instead of k-means++ restarts.
    std::optional<std::vector<double>> initial_centroids;
};

// Lloyd's algorithm with seeded k-means++ initialization. Deterministic:
// identical inputs and options give bit-identical results. Nearest-centroid
// ties go to the lowest centroid index; an empty cluster is re-seeded with
// the point farthest from its assigned centroid.
HardClusterResult kmeans(const SampleMatrix& samples, int k, const KMeansOptions& options = {});

struct FcmOptions {
    double fuzziness = 2.0;  // m > 1
    std::uint64_t seed = 0;
    int max_iter = 300;
    double tol = 1e-5;  // stop when max membership change <= tol
};

// Observer invoked after every membership update with the iteration number,
// the objective value and the current n*k membership matrix.
using FcmObserver = std::function<void(int, double, const std::vector<double>&)>;

// Standard fuzzy c-means alternation from seeded k-means++ centroids.
// A sample coincident with a centroid gets membership 1 there (lowest
// centroid index if coincident with several).
FuzzyClusterResult fcm(const SampleMatrix& samples, int k, const FcmOptions& options = {},
                       const FcmObserver& observer = nullptr);

// Memberships of each sample for fixed centroids (the FCM update formula).
std::vector<double> fcm_memberships(const SampleMatrix& samples,
                                    std::span<const double> centroids, int k, double m);

// Repeatedly merges the globally closest pair of clusters (Euclidean base
// metric). Ties are broken by the lexicographically smallest (id_a, id_b).
Dendrogram agglomerative(const SampleMatrix& samples, Linkage linkage = Linkage::Average);

// Flat partition after undoing the last k-1 merges. Labels are renumbered
// 0..k-1 in order of first sample occurrence.
std::vector<int> cut_dendrogram(const Dendrogram& dendrogram, int k);

// Mean silhouette over all samples, in [-1, 1]. Samples in singleton
// clusters contribute 0, as do samples with a == b == 0.
double silhouette_score(const SampleMatrix& samples, const std::vector<int>& labels);

struct InkCountOptions {
    // Sweep runs on a seeded uniform subsample of at most this many rows
    // (0 disables subsampling). Keeps the k sweep tractable on full pages.
    int max_sweep_samples = 2000;
    KMeansOptions kmeans;
};

struct InkCountResult {
    int k_best = 0;
    std::map<int, double> scores;  // k -> silhouette
};

// Runs kmeans for each k in [k_min, k_max] and picks the silhouette
// argmax (ties -> smallest k).
InkCountResult estimate_ink_count(const SampleMatrix& samples, int k_min, int k_max,
                                  std::uint64_t seed, const InkCountOptions& options = {});

}  // namespace inkspect

#include "inkspect/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "inkspect/errors.hpp"
#include "inkspect/random.hpp"

namespace inkspect {
namespace {

// Four independent accumulators; the summation order is fixed, so results
// stay bit-reproducible while the loop pipelines.
double squared_distance(const double* a, const double* b, int d) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    int i = 0;
    for (; i + 4 <= d; i += 4) {
        const double d0 = a[i] - b[i];
        const double d1 = a[i + 1] - b[i + 1];
        const double d2 = a[i + 2] - b[i + 2];
        const double d3 = a[i + 3] - b[i + 3];
        s0 += d0 * d0;
        s1 += d1 * d1;
        s2 += d2 * d2;
        s3 += d3 * d3;
    }
    for (; i < d; ++i) {
        const double diff = a[i] - b[i];
        s0 += diff * diff;
    }
    return (s0 + s1) + (s2 + s3);
}

// u^m with a fast path for the common default m == 2.
double pow_m(double u, double m) { return m == 2.0 ? u * u : std::pow(u, m); }

void require_samples(const SampleMatrix& samples) {
    if (samples.n < 1) throw InvalidParameterError("sample matrix is empty");
    if (samples.d < 1) throw InvalidParameterError("sample dimensionality must be >= 1");
    if (samples.values.size() != static_cast<std::size_t>(samples.n) * samples.d)
        throw InvalidParameterError("sample matrix size does not match n*d");
}

// Seeded k-means++: first centroid uniform, then proportional to the
// squared distance to the nearest chosen centroid. Falls back to the
// lowest unchosen index when every remaining distance is zero.
std::vector<double> kmeanspp_init(const SampleMatrix& samples, int k, Rng& rng) {
    const int n = samples.n, d = samples.d;
    std::vector<double> centroids(static_cast<std::size_t>(k) * d);
    std::vector<double> dist2(n, std::numeric_limits<double>::max());
    std::vector<std::uint8_t> chosen(n, 0);

    int first = static_cast<int>(rng.index(n));
    std::copy_n(samples.row(first).data(), d, centroids.begin());
    chosen[first] = 1;

    for (int j = 1; j < k; ++j) {
        const double* last = centroids.data() + static_cast<std::size_t>(j - 1) * d;
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d2 = squared_distance(samples.row(i).data(), last, d);
            if (d2 < dist2[i]) dist2[i] = d2;
            total += dist2[i];
        }
        int pick = -1;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double cum = 0.0;
            for (int i = 0; i < n; ++i) {
                cum += dist2[i];
                if (cum > target) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) pick = n - 1;  // numeric tail
        }
        if (pick < 0 || chosen[pick]) {
            // Degenerate weights (duplicate points): take the lowest unchosen.
            pick = -1;
            for (int i = 0; i < n; ++i)
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            if (pick < 0) pick = 0;
        }
        chosen[pick] = 1;
        std::copy_n(samples.row(pick).data(), d, centroids.begin() + static_cast<std::size_t>(j) * d);
    }
    return centroids;
}

struct LloydRun {
    std::vector<double> centroids;
    std::vector<int> labels;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

// Nearest centroid per sample; ties go to the lowest centroid index.
void assign(const SampleMatrix& samples, const std::vector<double>& centroids, int k,
            std::vector<int>& labels, std::vector<double>& dist2) {
    const int n = samples.n, d = samples.d;
    for (int i = 0; i < n; ++i) {
        const double* x = samples.row(i).data();
        double best = std::numeric_limits<double>::max();
        int best_j = 0;
        for (int j = 0; j < k; ++j) {
            const double d2 = squared_distance(x, centroids.data() + static_cast<std::size_t>(j) * d, d);
            if (d2 < best) {
                best = d2;
                best_j = j;
            }
        }
        labels[i] = best_j;
        dist2[i] = best;
    }
}

LloydRun lloyd(const SampleMatrix& samples, int k, std::vector<double> centroids, int max_iter,
               double tol) {
    const int n = samples.n, d = samples.d;
    LloydRun run;
    std::vector<int> labels(n, 0);
    std::vector<double> dist2(n, 0.0);
    std::vector<double> sums(static_cast<std::size_t>(k) * d);
    std::vector<std::size_t> counts(k);

    for (int iter = 1; iter <= max_iter; ++iter) {
        run.iterations = iter;
        assign(samples, centroids, k, labels, dist2);
        run.trace.push_back(std::accumulate(dist2.begin(), dist2.end(), 0.0));

        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), std::size_t{0});
        for (int i = 0; i < n; ++i) {
            const double* x = samples.row(i).data();
            double* s = sums.data() + static_cast<std::size_t>(labels[i]) * d;
            for (int a = 0; a < d; ++a) s[a] += x[a];
            ++counts[labels[i]];
        }

        std::vector<double> next(centroids.size());
        for (int j = 0; j < k; ++j) {
            if (counts[j] == 0) continue;
            const double* s = sums.data() + static_cast<std::size_t>(j) * d;
            double* c = next.data() + static_cast<std::size_t>(j) * d;
            for (int a = 0; a < d; ++a) c[a] = s[a] / static_cast<double>(counts[j]);
        }
        // Re-seed each empty cluster with the point farthest from its
        // assigned centroid (lowest index on ties, one point per cluster).
        for (int j = 0; j < k; ++j) {
            if (counts[j] != 0) continue;
            int far = 0;
            double far_d2 = -1.0;
            for (int i = 0; i < n; ++i)
                if (dist2[i] > far_d2) {
                    far_d2 = dist2[i];
                    far = i;
                }
            dist2[far] = -1.0;
            std::copy_n(samples.row(far).data(), d,
                        next.begin() + static_cast<std::size_t>(j) * d);
        }

        double movement = 0.0;
        for (int j = 0; j < k; ++j)
            movement = std::max(movement,
                                std::sqrt(squared_distance(
                                    next.data() + static_cast<std::size_t>(j) * d,
                                    centroids.data() + static_cast<std::size_t>(j) * d, d)));
        centroids.swap(next);
        if (movement <= tol) {
            run.converged = true;
            break;
        }
    }

    // Final labels are nearest-centroid assignments against the final
    // centroids; repair empty clusters so every label is populated.
    assign(samples, centroids, k, labels, dist2);
    std::fill(counts.begin(), counts.end(), std::size_t{0});
    for (int i = 0; i < n; ++i) ++counts[labels[i]];
    for (int j = 0; j < k; ++j) {
        if (counts[j] != 0) continue;
        int far = -1;
        double far_d2 = -1.0;
        for (int i = 0; i < n; ++i)
            if (counts[labels[i]] > 1 && dist2[i] > far_d2) {
                far_d2 = dist2[i];
                far = i;
            }
        // k <= n guarantees some cluster holds more than one sample here.
        --counts[labels[far]];
        labels[far] = j;
        counts[j] = 1;
        std::copy_n(samples.row(far).data(), d,
                    centroids.begin() + static_cast<std::size_t>(j) * d);
        dist2[far] = 0.0;
    }

    run.objective = std::accumulate(dist2.begin(), dist2.end(), 0.0);
    if (run.trace.empty() || run.objective < run.trace.back())
        run.trace.push_back(run.objective);
    run.centroids = std::move(centroids);
    run.labels = std::move(labels);
    return run;
}

}  // namespace

std::span<const double> HardClusterResult::centroid(int j) const {
    const int dim = d();
    return {centroids.data() + static_cast<std::size_t>(j) * dim, static_cast<std::size_t>(dim)};
}

HardClusterResult kmeans(const SampleMatrix& samples, int k, const KMeansOptions& options) {
    require_samples(samples);
    if (k < 1 || k > samples.n)
        throw InvalidParameterError("k must be in [1, n]; got k=" + std::to_string(k) +
                                    ", n=" + std::to_string(samples.n));
    if (options.max_iter < 1) throw InvalidParameterError("max_iter must be >= 1");
    if (options.tol < 0.0) throw InvalidParameterError("tol must be >= 0");

    LloydRun best;
    bool have_best = false;

    if (options.initial_centroids) {
        if (options.initial_centroids->size() != static_cast<std::size_t>(k) * samples.d)
            throw InvalidParameterError("initial_centroids must have k*d values");
        best = lloyd(samples, k, *options.initial_centroids, options.max_iter, options.tol);
        have_best = true;
    } else {
        const int restarts = std::max(1, options.restarts);
        for (int r = 0; r < restarts; ++r) {
            Rng rng(mix64(options.seed) + static_cast<std::uint64_t>(r));
            LloydRun run = lloyd(samples, k, kmeanspp_init(samples, k, rng), options.max_iter,
                                 options.tol);
            if (!have_best || run.objective < best.objective) {
                best = std::move(run);
                have_best = true;
            }
        }
    }

    HardClusterResult result;
    result.k = k;
    result.centroids = std::move(best.centroids);
    result.labels = std::move(best.labels);
    result.objective = best.objective;
    result.iterations = best.iterations;
    result.converged = best.converged;
    result.objective_trace = std::move(best.trace);
    return result;
}

std::vector<double> fcm_memberships(const SampleMatrix& samples,
                                    std::span<const double> centroids, int k, double m) {
    require_samples(samples);
    if (k < 1 || centroids.size() != static_cast<std::size_t>(k) * samples.d)
        throw InvalidParameterError("centroids must have k*d values");
    if (!(m > 1.0)) throw InvalidParameterError("fuzziness m must be > 1");

    const int n = samples.n, d = samples.d;
    const double exponent = 1.0 / (m - 1.0);
    std::vector<double> memberships(static_cast<std::size_t>(n) * k, 0.0);
    std::vector<double> dist2(k);

    for (int i = 0; i < n; ++i) {
        const double* x = samples.row(i).data();
        int coincident = -1;
        for (int j = 0; j < k; ++j) {
            dist2[j] = squared_distance(x, centroids.data() + static_cast<std::size_t>(j) * d, d);
            if (dist2[j] == 0.0 && coincident < 0) coincident = j;
        }
        double* u = memberships.data() + static_cast<std::size_t>(i) * k;
        if (coincident >= 0) {
            u[coincident] = 1.0;
            continue;
        }
        // u_ij = 1 / sum_l (d_ij / d_il)^(2/(m-1)), via squared distances.
        for (int j = 0; j < k; ++j) {
            double denom = 0.0;
            if (exponent == 1.0)
                for (int l = 0; l < k; ++l) denom += dist2[j] / dist2[l];
            else
                for (int l = 0; l < k; ++l) denom += std::pow(dist2[j] / dist2[l], exponent);
            u[j] = 1.0 / denom;
        }
    }
    return memberships;
}

FuzzyClusterResult fcm(const SampleMatrix& samples, int k, const FcmOptions& options,
                       const FcmObserver& observer) {
    require_samples(samples);
    if (k < 1 || k > samples.n)
        throw InvalidParameterError("k must be in [1, n]; got k=" + std::to_string(k) +
                                    ", n=" + std::to_string(samples.n));
    if (!(options.fuzziness > 1.0)) throw InvalidParameterError("fuzziness m must be > 1");
    if (options.max_iter < 1) throw InvalidParameterError("max_iter must be >= 1");

    const int n = samples.n, d = samples.d;
    const double m = options.fuzziness;

    Rng rng(mix64(options.seed) ^ 0x66636d00ULL);
    std::vector<double> centroids = kmeanspp_init(samples, k, rng);

    const auto objective = [&](const std::vector<double>& u) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            const double* x = samples.row(i).data();
            const double* ui = u.data() + static_cast<std::size_t>(i) * k;
            for (int j = 0; j < k; ++j) {
                if (ui[j] == 0.0) continue;
                total += pow_m(ui[j], m) *
                         squared_distance(x, centroids.data() + static_cast<std::size_t>(j) * d, d);
            }
        }
        return total;
    };

    std::vector<double> memberships = fcm_memberships(samples, centroids, k, m);
    FuzzyClusterResult result;
    result.k = k;
    result.fuzziness = m;
    result.objective_trace.push_back(objective(memberships));
    if (observer) observer(0, result.objective_trace.back(), memberships);

    int iter = 0;
    for (iter = 1; iter <= options.max_iter; ++iter) {
        // Centroids from memberships: c_j = sum_i u_ij^m x_i / sum_i u_ij^m.
        std::vector<double> sums(static_cast<std::size_t>(k) * d, 0.0);
        std::vector<double> weights(k, 0.0);
        for (int i = 0; i < n; ++i) {
            const double* x = samples.row(i).data();
            const double* ui = memberships.data() + static_cast<std::size_t>(i) * k;
            for (int j = 0; j < k; ++j) {
                const double w = pow_m(ui[j], m);
                weights[j] += w;
                double* s = sums.data() + static_cast<std::size_t>(j) * d;
                for (int a = 0; a < d; ++a) s[a] += w * x[a];
            }
        }
        for (int j = 0; j < k; ++j) {
            if (weights[j] <= 0.0) continue;  // starved cluster keeps its centroid
            const double* s = sums.data() + static_cast<std::size_t>(j) * d;
            double* c = centroids.data() + static_cast<std::size_t>(j) * d;
            for (int a = 0; a < d; ++a) c[a] = s[a] / weights[j];
        }

        std::vector<double> next = fcm_memberships(samples, centroids, k, m);
        double change = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i)
            change = std::max(change, std::abs(next[i] - memberships[i]));
        memberships.swap(next);

        result.objective_trace.push_back(objective(memberships));
        if (observer) observer(iter, result.objective_trace.back(), memberships);

        if (change <= options.tol) {
            result.converged = true;
            break;
        }
    }

    result.iterations = std::min(iter, options.max_iter);
    result.centroids = std::move(centroids);
    result.memberships = std::move(memberships);
    result.objective = result.objective_trace.back();
    return result;
}

std::string linkage_name(Linkage linkage) {
    switch (linkage) {
        case Linkage::Single: return "single";
        case Linkage::Complete: return "complete";
        case Linkage::Average: return "average";
    }
    return "?";
}

std::optional<Linkage> linkage_from_name(const std::string& name) {
    if (name == "single") return Linkage::Single;
    if (name == "complete") return Linkage::Complete;
    if (name == "average") return Linkage::Average;
    return std::nullopt;
}

namespace {

// Square distance matrix over slots; only entries between active slots are
// meaningful. Kept as a flat array for n up to a few thousand.
class SlotMatrix {
public:
    SlotMatrix(int n) : n_(n), values_(static_cast<std::size_t>(n) * n, 0.0) {}
    double get(int a, int b) const { return values_[static_cast<std::size_t>(a) * n_ + b]; }
    void set(int a, int b, double v) {
        values_[static_cast<std::size_t>(a) * n_ + b] = v;
        values_[static_cast<std::size_t>(b) * n_ + a] = v;
    }

private:
    int n_;
    std::vector<double> values_;
};

}  // namespace

Dendrogram agglomerative(const SampleMatrix& samples, Linkage linkage) {
    require_samples(samples);
    const int n = samples.n, d = samples.d;
    if (n > 20000)
        throw InvalidParameterError(
            "agglomerative clustering needs an O(n^2) distance matrix; subsample below 20000 "
            "points first");

    Dendrogram dendrogram;
    dendrogram.n = n;
    dendrogram.linkage = linkage;
    if (n == 1) return dendrogram;

    SlotMatrix dist(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            dist.set(a, b, std::sqrt(squared_distance(samples.row(a).data(),
                                                      samples.row(b).data(), d)));

    std::vector<int> cluster_id(n);     // slot -> current cluster id
    std::vector<int> cluster_size(n, 1);
    std::vector<std::uint8_t> active(n, 1);
    std::iota(cluster_id.begin(), cluster_id.end(), 0);

    // Per-slot cached nearest neighbor under (distance, id_a, id_b) order.
    struct Nearest {
        double distance = std::numeric_limits<double>::max();
        int slot = -1;
    };
    std::vector<Nearest> nearest(n);

    const auto pair_ids = [&](int sa, int sb) {
        return std::minmax(cluster_id[sa], cluster_id[sb]);
    };
    // Strict "better than" for candidate merges.
    const auto better = [&](double da, int a1, int a2, double db, int b1, int b2) {
        if (da != db) return da < db;
        if (a1 != b1) return a1 < b1;
        return a2 < b2;
    };

    const auto rescan = [&](int s) {
        Nearest best;
        for (int t = 0; t < n; ++t) {
            if (!active[t] || t == s) continue;
            const double dv = dist.get(s, t);
            if (best.slot < 0) {
                best = {dv, t};
                continue;
            }
            const auto [cb1, cb2] = pair_ids(s, best.slot);
            const auto [ct1, ct2] = pair_ids(s, t);
            if (better(dv, ct1, ct2, best.distance, cb1, cb2)) best = {dv, t};
        }
        nearest[s] = best;
    };
    for (int s = 0; s < n; ++s) rescan(s);

    dendrogram.merges.reserve(n - 1);
    for (int merge_index = 0; merge_index < n - 1; ++merge_index) {
        // Globally closest pair; ties by lexicographically smallest ids.
        int best_slot = -1;
        for (int s = 0; s < n; ++s) {
            if (!active[s] || nearest[s].slot < 0) continue;
            if (best_slot < 0) {
                best_slot = s;
                continue;
            }
            const auto [b1, b2] = pair_ids(best_slot, nearest[best_slot].slot);
            const auto [c1, c2] = pair_ids(s, nearest[s].slot);
            if (better(nearest[s].distance, c1, c2, nearest[best_slot].distance, b1, b2))
                best_slot = s;
        }

        const int sa = best_slot;
        const int sb = nearest[sa].slot;
        const double merge_distance = nearest[sa].distance;
        const auto [id_a, id_b] = pair_ids(sa, sb);
        const int new_size = cluster_size[sa] + cluster_size[sb];
        dendrogram.merges.push_back({id_a, id_b, merge_distance, new_size});

        // Lance-Williams update into slot sa; slot sb is retired.
        const double wa = static_cast<double>(cluster_size[sa]);
        const double wb = static_cast<double>(cluster_size[sb]);
        active[sb] = 0;
        for (int t = 0; t < n; ++t) {
            if (!active[t] || t == sa) continue;
            const double da = dist.get(sa, t);
            const double db = dist.get(sb, t);
            double dn = 0.0;
            switch (linkage) {
                case Linkage::Single: dn = std::min(da, db); break;
                case Linkage::Complete: dn = std::max(da, db); break;
                case Linkage::Average: dn = (wa * da + wb * db) / (wa + wb); break;
            }
            dist.set(sa, t, dn);
        }
        cluster_id[sa] = n + merge_index;
        cluster_size[sa] = new_size;
        nearest[sb] = Nearest{};

        // Neighbor caches touching the merged slots must be rebuilt; all
        // other slots only need to consider the new cluster as a candidate.
        rescan(sa);
        for (int t = 0; t < n; ++t) {
            if (!active[t] || t == sa) continue;
            if (nearest[t].slot == sa || nearest[t].slot == sb) {
                rescan(t);
                continue;
            }
            const double dv = dist.get(t, sa);
            const auto [cb1, cb2] = pair_ids(t, nearest[t].slot);
            const auto [cn1, cn2] = pair_ids(t, sa);
            if (better(dv, cn1, cn2, nearest[t].distance, cb1, cb2))
                nearest[t] = {dv, sa};
        }
    }
    return dendrogram;
}

std::vector<int> cut_dendrogram(const Dendrogram& dendrogram, int k) {
    const int n = dendrogram.n;
    if (n < 1) throw InvalidParameterError("empty dendrogram");
    if (k < 1 || k > n)
        throw InvalidParameterError("k must be in [1, n]; got k=" + std::to_string(k) +
                                    ", n=" + std::to_string(n));
    if (static_cast<int>(dendrogram.merges.size()) != n - 1)
        throw InvalidParameterError("dendrogram must contain exactly n-1 merges");

    // Union-find over ids 0..2n-2; replay all but the last k-1 merges.
    std::vector<int> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int t = 0; t < n - k; ++t) {
        const auto& merge = dendrogram.merges[t];
        const int root = n + t;
        parent[find(merge.id_a)] = root;
        parent[find(merge.id_b)] = root;
    }

    std::vector<int> labels(n, -1);
    std::vector<int> label_of_root(2 * n - 1, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int root = find(i);
        if (label_of_root[root] < 0) label_of_root[root] = next++;
        labels[i] = label_of_root[root];
    }
    return labels;
}

namespace {

// Shared silhouette formula; `dist(i, j)` supplies pairwise distances.
template <typename DistFn>
double silhouette_impl(int n, const std::vector<int>& labels, DistFn&& dist) {
    if (static_cast<int>(labels.size()) != n)
        throw InvalidParameterError("labels size must equal the sample count");

    int k = 0;
    for (int label : labels) {
        if (label < 0) throw InvalidParameterError("labels must be non-negative");
        k = std::max(k, label + 1);
    }
    std::vector<std::size_t> sizes(k, 0);
    for (int label : labels) ++sizes[label];
    if (std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s > 0; }) < 2)
        throw InvalidParameterError("silhouette is undefined for a single cluster");

    double total = 0.0;
    std::vector<double> mean_to(k);
    for (int i = 0; i < n; ++i) {
        std::fill(mean_to.begin(), mean_to.end(), 0.0);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            mean_to[labels[j]] += dist(i, j);
        }
        const int own = labels[i];
        if (sizes[own] <= 1) continue;  // singleton contributes 0

        const double a = mean_to[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::max();
        for (int j = 0; j < k; ++j) {
            if (j == own || sizes[j] == 0) continue;
            b = std::min(b, mean_to[j] / static_cast<double>(sizes[j]));
        }
        const double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;  // a == b == 0 contributes 0
    }
    return total / static_cast<double>(n);
}

}  // namespace

double silhouette_score(const SampleMatrix& samples, const std::vector<int>& labels) {
    require_samples(samples);
    const int d = samples.d;
    return silhouette_impl(samples.n, labels, [&](int i, int j) {
        return std::sqrt(squared_distance(samples.row(i).data(), samples.row(j).data(), d));
    });
}

namespace {

// Seeded uniform subsample of row indices, ascending (raster order kept).
std::vector<int> subsample_indices(int n, int max_count, std::uint64_t seed) {
    std::vector<int> indices(n);
    std::iota(indices.begin(), indices.end(), 0);
    if (max_count <= 0 || n <= max_count) return indices;

    Rng rng(mix64(seed) ^ 0x73756273616d70ULL);
    for (int i = 0; i < max_count; ++i) {
        const int j = i + static_cast<int>(rng.index(static_cast<std::uint64_t>(n - i)));
        std::swap(indices[i], indices[j]);
    }
    indices.resize(max_count);
    std::sort(indices.begin(), indices.end());
    return indices;
}

}  // namespace

InkCountResult estimate_ink_count(const SampleMatrix& samples, int k_min, int k_max,
                                  std::uint64_t seed, const InkCountOptions& options) {
    require_samples(samples);
    if (!(2 <= k_min && k_min <= k_max && k_max <= samples.n - 1))
        throw InvalidParameterError("need 2 <= k_min <= k_max <= n-1");

    int cap = options.max_sweep_samples;
    if (cap > 0 && cap < k_max + 1) cap = k_max + 1;  // keep the sweep range valid
    const std::vector<int> picked = subsample_indices(samples.n, cap, seed);
    SampleMatrix sweep;
    sweep.n = static_cast<int>(picked.size());
    sweep.d = samples.d;
    sweep.values.reserve(static_cast<std::size_t>(sweep.n) * sweep.d);
    for (int idx : picked) {
        const auto row = samples.row(idx);
        sweep.values.insert(sweep.values.end(), row.begin(), row.end());
    }

    // One pairwise distance matrix serves every k of the sweep, when it fits.
    const int ns = sweep.n;
    std::vector<double> dist;
    if (ns <= 6000) {
        dist.assign(static_cast<std::size_t>(ns) * ns, 0.0);
        for (int i = 0; i < ns; ++i)
            for (int j = i + 1; j < ns; ++j) {
                const double v = std::sqrt(
                    squared_distance(sweep.row(i).data(), sweep.row(j).data(), sweep.d));
                dist[static_cast<std::size_t>(i) * ns + j] = v;
                dist[static_cast<std::size_t>(j) * ns + i] = v;
            }
    }

    InkCountResult result;
    double best_score = -std::numeric_limits<double>::max();
    for (int k = k_min; k <= k_max; ++k) {
        KMeansOptions opts = options.kmeans;
        opts.seed = seed;
        const HardClusterResult clusters = kmeans(sweep, k, opts);
        const double score =
            dist.empty()
                ? silhouette_score(sweep, clusters.labels)
                : silhouette_impl(ns, clusters.labels, [&](int i, int j) {
                      return dist[static_cast<std::size_t>(i) * ns + j];
                  });
        result.scores[k] = score;
        if (score > best_score) {  // ties keep the smallest k
            best_score = score;
            result.k_best = k;
        }
    }
    return result;
}

}  // namespace inkspect

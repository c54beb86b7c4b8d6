#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "vmkm/engine.hpp"
#include "vmkm/init.hpp"
#include "vmkm/metrics.hpp"
#include "vmkm/random.hpp"
#include "vmkm/synthetic.hpp"

namespace {

using vmkm::ClusterState;
using vmkm::Dataset;
using vmkm::make_point;
using vmkm::Point;

constexpr double kEps = 1e-6;

std::vector<Point> scalars(std::initializer_list<double> values) {
    std::vector<Point> out;
    for (double v : values) {
        out.push_back(make_point({v}));
    }
    return out;
}

// State with the given assignments and centroids at the member means.
ClusterState partition(const Dataset& ds, std::size_t k, std::vector<std::size_t> assignments) {
    auto state = vmkm::make_initial_state(ds, std::vector<Point>(k, Point::Zero(static_cast<Eigen::Index>(ds.dim()))));
    state.assignments = std::move(assignments);
    return vmkm::update_centroids(ds, std::move(state), kEps);
}

// Brute-force argmin of the squared Mahalanobis distance, lowest index on ties.
std::size_t oracle_argmin(const Dataset& ds, const ClusterState& s, std::size_t i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < s.k; ++j) {
        const Point diff = ds.element(i) - s.centroids[j];
        const double d = diff.dot(s.covariances[j].inverse * diff);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

// Optimal 1-D k-partition MSE by exhaustive search over contiguous splits.
double optimal_1d_mse(std::vector<double> v, std::size_t k) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    auto cost = [&](std::size_t a, std::size_t b) {
        double mean = 0.0;
        for (std::size_t i = a; i < b; ++i) mean += v[i];
        mean /= static_cast<double>(b - a);
        double c = 0.0;
        for (std::size_t i = a; i < b; ++i) c += (v[i] - mean) * (v[i] - mean);
        return c;
    };
    std::vector<std::vector<double>> best(k + 1, std::vector<double>(n + 1, std::numeric_limits<double>::infinity()));
    best[0][0] = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        for (std::size_t b = j; b <= n; ++b) {
            for (std::size_t a = j - 1; a < b; ++a) {
                best[j][b] = std::min(best[j][b], best[j - 1][a] + cost(a, b));
            }
        }
    }
    return best[k][n] / static_cast<double>(n);
}

TEST(AssignAll, SingleCluster) {
    const auto ds = vmkm::dataset_from_values({1, 5, 9, 13});
    const auto s = vmkm::assign_all(ds, vmkm::make_initial_state(ds, scalars({100.0})), kEps);
    EXPECT_EQ(s.assignments, (std::vector<std::size_t>{0, 0, 0, 0}));
    EXPECT_EQ(s.counts[0], 4u);
}

TEST(AssignAll, TieGoesToLowestIndex) {
    const auto ds = vmkm::dataset_from_values({5.0});
    const auto s = vmkm::assign_all(ds, vmkm::make_initial_state(ds, scalars({100.0, 4.0, 50.0, 6.0})), kEps);
    EXPECT_EQ(s.assignments[0], 1u);
    const auto same = vmkm::assign_all(ds, vmkm::make_initial_state(ds, scalars({9.0, 2.0, 9.0, 2.0})), kEps);
    EXPECT_EQ(same.assignments[0], 1u);
}

TEST(AssignAll, HandExample) {
    const auto ds = vmkm::dataset_from_values({0, 1, 10, 11});
    const auto s = vmkm::assign_all(ds, vmkm::make_initial_state(ds, scalars({0.5, 10.5})), kEps);
    EXPECT_EQ(s.assignments, (std::vector<std::size_t>{0, 0, 1, 1}));
    EXPECT_EQ(s.counts, (std::vector<std::size_t>{2, 2}));
}

TEST(AssignAll, MatchesBruteForceOracle) {
    vmkm::Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(99);
        const std::size_t k = 1 + rng.uniform_index(std::min<std::size_t>(5, n));
        const std::size_t d = 1 + rng.uniform_index(3);
        vmkm::ElementMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            m.data()[i] = std::round(rng.normal(0.0, 4.0));
        }
        const auto ds = vmkm::validate_dataset(m);
        auto s = vmkm::make_initial_state(ds, vmkm::init_centers_random(ds, k, trial));
        s.assignments.resize(n);
        for (auto& a : s.assignments) a = rng.uniform_index(k);
        vmkm::refresh_statistics(ds, s, kEps);
        const auto assigned = vmkm::assign_all(ds, s, kEps);
        for (std::size_t i = 0; i < n; ++i) {
            ASSERT_EQ(assigned.assignments[i], oracle_argmin(ds, s, i)) << "trial " << trial << " element " << i;
        }
    }
}

TEST(UpdateCentroids, MeansAndEmptyClusters) {
    const auto ds = vmkm::dataset_from_values({2, 4, 6});
    auto s = vmkm::make_initial_state(ds, scalars({0.0, 7.0}));
    s.assignments = {0, 0, 0};
    s = vmkm::update_centroids(ds, std::move(s), kEps);
    EXPECT_EQ(s.centroids[0](0), 4.0);
    EXPECT_EQ(s.centroids[1](0), 7.0);
    EXPECT_EQ(s.counts[1], 0u);
    EXPECT_EQ(s.fitness[1], 0.0);

    const auto ds2 = vmkm::validate_dataset(std::vector<std::vector<double>>{{0, 0}, {2, 0}, {1, 3}});
    const auto s2 = partition(ds2, 1, {0, 0, 0});
    EXPECT_TRUE(s2.centroids[0].isApprox(make_point({1.0, 1.0})));
}

TEST(TransferFromLargest, HandExample) {
    const auto ds = vmkm::dataset_from_values({0, 0, 0, 9, 20});
    const auto s = partition(ds, 2, {0, 0, 0, 0, 1});
    EXPECT_DOUBLE_EQ(s.centroids[0](0), 2.25);
    EXPECT_DOUBLE_EQ(s.variances[0], 15.1875);
    const auto r = vmkm::transfer_from_largest(ds, s, kEps);
    ASSERT_EQ(r.decisions.size(), 1u);
    const auto& d = r.decisions[0];
    EXPECT_EQ(d.element_id, 3u);
    EXPECT_EQ(d.from_cluster, 0u);
    EXPECT_EQ(d.to_cluster, 1u);
    EXPECT_DOUBLE_EQ(d.sigma_v, 45.5625);
    EXPECT_DOUBLE_EQ(d.sigma_c, 15.1875);
    EXPECT_EQ(d.rule, vmkm::TransferRule::FromLargest);
    EXPECT_EQ(r.state.assignments, (std::vector<std::size_t>{0, 0, 0, 1, 1}));
    EXPECT_EQ(r.state.centroids[0](0), 0.0);
    EXPECT_EQ(r.state.centroids[1](0), 14.5);
}

TEST(TransferFromLargest, ZeroVarianceIsNoOp) {
    const auto ds = vmkm::dataset_from_values({3, 3, 3, 3, 8});
    const auto s = partition(ds, 2, {0, 0, 0, 0, 1});
    const auto r = vmkm::transfer_from_largest(ds, s, kEps);
    EXPECT_TRUE(r.decisions.empty());
    EXPECT_EQ(r.state, s);
}

TEST(TransferFromLargest, NoViolatorsLeavesStateUnchanged) {
    const auto ds = vmkm::dataset_from_values({0, 0, 4, 4, 50});
    const auto s = partition(ds, 2, {0, 0, 0, 0, 1});
    const auto r = vmkm::transfer_from_largest(ds, s, kEps);
    EXPECT_TRUE(r.decisions.empty());
    EXPECT_EQ(r.state, s);
}

TEST(TransferFromLargest, DestinationIsElementNearestByMahalanobis) {
    const auto ds = vmkm::dataset_from_values({-40, 0, 0, 0, 0, 0, 0, 0, 40, -60, 60});
    const auto s = partition(ds, 3, {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2});
    const auto r = vmkm::transfer_from_largest(ds, s, kEps);
    ASSERT_EQ(r.decisions.size(), 2u);
    for (const auto& d : r.decisions) {
        EXPECT_GE(d.sigma_v, 2.0 * d.sigma_c);
        EXPECT_EQ(d.to_cluster, d.element_id == 0 ? 1u : 2u);
    }
}

TEST(TransferFromLargest, NeverIncreasesSourceVariance) {
    vmkm::Rng rng(77);
    int with_transfers = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 8 + rng.uniform_index(40);
        const std::size_t k = 2 + rng.uniform_index(3);
        std::vector<double> v(n);
        for (auto& x : v) x = rng.uniform() < 0.15 ? rng.normal(0, 40) : rng.normal(0, 3);
        const auto ds = vmkm::dataset_from_values(v);
        std::vector<std::size_t> a(n);
        for (auto& x : a) x = rng.uniform_index(k);
        const auto s = partition(ds, k, a);
        const std::size_t l = vmkm::largest_cluster(s);
        const auto r = vmkm::transfer_from_largest(ds, s, kEps);
        if (!r.decisions.empty()) {
            ++with_transfers;
            EXPECT_LE(r.state.variances[l], s.variances[l]);
            EXPECT_GE(r.state.counts[l], 1u);
        }
    }
    EXPECT_GT(with_transfers, 20);
}

TEST(TransferToSmallest, HandExample) {
    const auto ds = vmkm::dataset_from_values({0, 0, 6, 10});
    const auto s = partition(ds, 2, {0, 0, 0, 1});
    EXPECT_EQ(s.variances[0], 8.0);
    const auto r = vmkm::transfer_to_smallest(ds, s, kEps);
    ASSERT_EQ(r.decisions.size(), 1u);
    EXPECT_EQ(r.decisions[0].element_id, 2u);
    EXPECT_EQ(r.decisions[0].from_cluster, 0u);
    EXPECT_EQ(r.decisions[0].to_cluster, 1u);
    EXPECT_EQ(r.decisions[0].sigma_v, 16.0);
    EXPECT_EQ(r.decisions[0].sigma_c, 8.0);
    EXPECT_EQ(r.decisions[0].rule, vmkm::TransferRule::ToSmallest);
    EXPECT_EQ(r.state.counts, (std::vector<std::size_t>{2, 2}));
}

TEST(TransferToSmallest, ZeroVarianceNeighbourIsNoOp) {
    const auto ds = vmkm::dataset_from_values({3, 3, 10});
    const auto s = partition(ds, 2, {0, 0, 1});
    const auto r = vmkm::transfer_to_smallest(ds, s, kEps);
    EXPECT_TRUE(r.decisions.empty());
}

TEST(TransferToSmallest, EmptyClusterIsFed) {
    const auto ds = vmkm::dataset_from_values({0, 1, 2, 3, 4, 5});
    auto s = vmkm::make_initial_state(ds, scalars({2.5, 200.0}));
    s.assignments.assign(6, 0);
    s = vmkm::update_centroids(ds, std::move(s), kEps);
    ASSERT_EQ(vmkm::smallest_cluster(s), 1u);
    const auto r = vmkm::transfer_to_smallest(ds, s, kEps);
    EXPECT_GT(r.state.counts[1], 0u);
    EXPECT_GE(r.state.counts[0], 1u);
    for (const auto& d : r.decisions) {
        EXPECT_GE(d.sigma_v, d.sigma_c);
    }
}

TEST(TransferToSmallest, NeighbourIsCentroidNearest) {
    const auto ds = vmkm::dataset_from_values({0, 2, 4, 100, 102, 104, 200, 201, 202});
    const auto s = partition(ds, 4, {0, 0, 0, 1, 1, 1, 2, 2, 2});
    ASSERT_EQ(vmkm::smallest_cluster(s), 3u);
    EXPECT_EQ(vmkm::neighbour_cluster(s, 3), 0u);
    EXPECT_EQ(vmkm::neighbour_cluster(s, 1), 2u);
    EXPECT_EQ(vmkm::neighbour_cluster(s, 0), 1u);
}

TEST(NestedLoop, BalancedStateExitsImmediately) {
    const auto ds = vmkm::dataset_from_values({0, 1, 2, 10, 11, 12});
    const auto s = partition(ds, 2, {0, 0, 0, 1, 1, 1});
    vmkm::VmkmParams p;
    p.k = 2;
    const auto r = vmkm::nested_loop(ds, s, vmkm::AlphaState::initial(p.alpha0), p);
    EXPECT_EQ(r.iterations, 0u);
    EXPECT_EQ(r.state, s);
    EXPECT_EQ(r.alphas.alpha_a, p.alpha0);
}

TEST(NestedLoop, AlphaDecaysOncePerIteration) {
    const auto ds = vmkm::synthetic::gaussian_blobs_1d({0, 50, 100}, 2.0, 30, 4);
    auto s = vmkm::make_initial_state(ds, scalars({0.0, 1.0, 2.0}));
    s = vmkm::update_centroids(ds, vmkm::assign_all(ds, std::move(s), kEps), kEps);
    vmkm::VmkmParams p;
    p.k = 3;
    const auto r = vmkm::nested_loop(ds, s, vmkm::AlphaState::initial(p.alpha0), p);
    EXPECT_GT(r.iterations, 0u);
    EXPECT_NEAR(r.alphas.alpha_a, p.alpha0 * std::pow(2.0 / 3.0, static_cast<double>(r.iterations)), 1e-12);
    EXPECT_EQ(r.alphas.alpha_b, p.alpha0);
    std::size_t total = 0;
    for (auto c : r.state.counts) total += c;
    EXPECT_EQ(total, ds.size());
}

TEST(MainAlphas, ResetAndDecay) {
    vmkm::VmkmParams p;
    p.k = 4;
    vmkm::AlphaState a{0.01, 0.30};
    const auto next = vmkm::advance_main_alphas(a, p, 4);
    EXPECT_EQ(next.alpha_a, 0.30);
    EXPECT_NEAR(next.alpha_b, 0.225, 1e-15);
    p.strict_eq10 = true;
    const auto strict = vmkm::advance_main_alphas(a, p, 4);
    EXPECT_NEAR(strict.alpha_a, 0.225, 1e-15);
    EXPECT_EQ(strict.alpha_b, 0.30);
}

TEST(StallRule, NeedsConsecutiveSmallIterations) {
    EXPECT_FALSE(vmkm::transfers_stalled({0, 0}, 100, 0.01, 3));
    EXPECT_TRUE(vmkm::transfers_stalled({50, 0, 0, 0}, 100, 0.01, 3));
    EXPECT_FALSE(vmkm::transfers_stalled({0, 1, 0}, 100, 0.01, 3));
    EXPECT_TRUE(vmkm::transfers_stalled({0, 1, 0}, 1000, 0.01, 3));
}

TEST(RunVmkm, SingleCluster) {
    const auto ds = vmkm::dataset_from_values({1, 2, 3, 10});
    vmkm::VmkmParams p;
    p.k = 1;
    const auto r = vmkm::run_vmkm(ds, scalars({0.0}), p);
    EXPECT_EQ(r.main_iterations, 1u);
    EXPECT_EQ(r.termination_reason, vmkm::TerminationReason::ConditionMet);
    EXPECT_EQ(r.final_state.centroids[0](0), 4.0);
}

TEST(RunVmkm, SeparatedBlobsReachOptimalPartition) {
    const auto ds = vmkm::synthetic::gaussian_blobs_1d({0, 50, 100}, 1.0, 10, 21);
    std::vector<double> values;
    for (std::size_t i = 0; i < ds.size(); ++i) values.push_back(ds.element(i)(0));
    const double optimum = optimal_1d_mse(values, 3);
    vmkm::VmkmParams p;
    p.k = 3;
    const auto r = vmkm::run_vmkm(ds, {ds.element(0), ds.element(10), ds.element(20)}, p);
    EXPECT_EQ(r.termination_reason, vmkm::TerminationReason::ConditionMet);
    EXPECT_EQ(r.final_state.empty_clusters(), 0u);
    EXPECT_NEAR(r.mse, optimum, 1e-9);
    for (std::size_t b = 0; b < 3; ++b) {
        for (std::size_t i = 0; i < 10; ++i) {
            EXPECT_EQ(r.final_state.assignments[b * 10 + i], r.final_state.assignments[b * 10]);
        }
    }
}

TEST(RunVmkm, AdversarialInitLeavesNoEmptyCluster) {
    const auto ds = vmkm::synthetic::gaussian_blobs_1d({0, 50, 100}, 2.0, 100, 0);
    vmkm::VmkmParams p;
    p.k = 3;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        p.seed = seed;
        const auto r = vmkm::run_vmkm(ds, scalars({200.0, 200.0, 200.0}), p);
        EXPECT_EQ(r.final_state.empty_clusters(), 0u);
    }
}

TEST(RunVmkm, ReportInvariantsAndDeterminism) {
    const std::vector<Dataset> datasets = {
        vmkm::synthetic::gaussian_blobs_1d({0, 50, 100}, 2.0, 100, 1),
        vmkm::synthetic::uniform_noise(200, 2, 0.0, 10.0, 2),
        vmkm::dataset_from_values(std::vector<double>(50, 7.0)),
    };
    for (const auto& ds : datasets) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            vmkm::VmkmParams p;
            p.k = 3;
            p.seed = seed;
            const auto centers = vmkm::init_centers_random(ds, 3, seed);
            const auto r = vmkm::run_vmkm(ds, centers, p);
            EXPECT_EQ(r, vmkm::run_vmkm(ds, centers, p));
            EXPECT_LE(r.main_iterations, p.max_main_iterations);
            EXPECT_EQ(r.transfers_per_iteration.size(), r.main_iterations);
            EXPECT_EQ(r.nested_iterations_per_main.size(), r.main_iterations);
            std::size_t nested = 0;
            for (auto x : r.nested_iterations_per_main) nested += x;
            EXPECT_EQ(nested, r.nested_iterations_total);
            if (r.termination_reason == vmkm::TerminationReason::Stalled) {
                ASSERT_GE(r.transfers_per_iteration.size(), 3u);
                for (std::size_t t = r.transfers_per_iteration.size() - 3; t < r.transfers_per_iteration.size(); ++t) {
                    EXPECT_LT(static_cast<double>(r.transfers_per_iteration[t]), 0.01 * static_cast<double>(ds.size()));
                }
            }
            const std::size_t decays = r.main_iterations - (r.termination_reason == vmkm::TerminationReason::ConditionMet ? 1 : 0);
            EXPECT_NEAR(r.final_alphas.alpha_b, p.alpha0 * std::pow(2.0 / 3.0, static_cast<double>(decays)), 1e-12);
            EXPECT_NEAR(r.mse, vmkm::mse(ds, r.final_state), 1e-9 * std::max(1.0, r.mse));
            std::size_t total = 0;
            for (auto c : r.final_state.counts) total += c;
            EXPECT_EQ(total, ds.size());
        }
    }
}

TEST(RunVmkm, ConstantDataHasZeroMse) {
    const auto ds = vmkm::dataset_from_values(std::vector<double>(40, 3.5));
    vmkm::VmkmParams p;
    p.k = 3;
    const auto r = vmkm::run_vmkm(ds, vmkm::init_centers_random(ds, 3, 0), p);
    EXPECT_EQ(r.mse, 0.0);
    EXPECT_LE(r.main_iterations, 100u);
}

TEST(RunVmkm, NestedLoopCountsStayModerateOnNoisyImage) {
    vmkm::Rng rng(8);
    std::vector<double> v;
    const auto clean = vmkm::synthetic::quadrant_image(32, {20, 90, 160, 230});
    for (std::size_t i = 0; i < clean.size(); ++i) v.push_back(clean.element(i)(0) + rng.normal(0.0, 8.0));
    const auto ds = vmkm::dataset_from_values(v);
    vmkm::VmkmParams p;
    p.k = 4;
    const auto r = vmkm::run_vmkm(ds, vmkm::init_centers_random(ds, 4, 1), p);
    for (auto nested : r.nested_iterations_per_main) {
        EXPECT_LT(nested, 500u);
    }
}

TEST(RunVmkm, StrictModeKeepsAlphaB) {
    const auto ds = vmkm::synthetic::gaussian_blobs_1d({0, 50, 100}, 2.0, 50, 3);
    vmkm::VmkmParams p;
    p.k = 3;
    p.strict_eq10 = true;
    const auto r = vmkm::run_vmkm(ds, scalars({200.0, 200.0, 200.0}), p);
    EXPECT_EQ(r.final_alphas.alpha_b, p.alpha0);
}

TEST(RunVmkm, RejectsInvalidParameters) {
    const auto ds = vmkm::dataset_from_values({1, 2, 3});
    vmkm::VmkmParams p;
    p.k = 2;
    p.alpha0 = 0.5;
    EXPECT_THROW(vmkm::run_vmkm(ds, scalars({1.0, 2.0}), p), vmkm::Error);
    p.alpha0 = 0.3;
    EXPECT_THROW(vmkm::run_vmkm(ds, scalars({1.0}), p), vmkm::Error);
}

}  // namespace

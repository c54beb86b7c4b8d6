#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "vmkm/cluster_state.hpp"
#include "vmkm/dataset.hpp"
#include "vmkm/init.hpp"
#include "vmkm/params.hpp"
#include "vmkm/random.hpp"

namespace {

using vmkm::Error;
using vmkm::ErrorKind;

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected vmkm::Error";
    return ErrorKind::InvalidParameter;
}

vmkm::Dataset ramp(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = static_cast<double>(i);
    }
    return vmkm::dataset_from_values(v);
}

TEST(ValidateDataset, WellFormedInput) {
    const auto ds = vmkm::validate_dataset(std::vector<std::vector<double>>{{1.0}, {2.0}, {3.0}});
    EXPECT_EQ(ds.size(), 3u);
    EXPECT_EQ(ds.dim(), 1u);
    EXPECT_EQ(ds.element(2)(0), 3.0);
    EXPECT_FALSE(ds.image_shape());
}

TEST(ValidateDataset, RaggedRows) {
    EXPECT_EQ(kind_of([] { vmkm::validate_dataset(std::vector<std::vector<double>>{{1.0}, {2.0, 3.0}}); }),
              ErrorKind::RaggedDimensions);
}

TEST(ValidateDataset, NonFinite) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_EQ(kind_of([&] { vmkm::validate_dataset(std::vector<std::vector<double>>{{nan}}); }),
              ErrorKind::NonFiniteValue);
    EXPECT_EQ(kind_of([&] { vmkm::validate_dataset(std::vector<std::vector<double>>{{1.0, inf}}); }),
              ErrorKind::NonFiniteValue);
}

TEST(ValidateDataset, Empty) {
    EXPECT_EQ(kind_of([] { vmkm::validate_dataset(std::vector<std::vector<double>>{}); }), ErrorKind::EmptyDataset);
}

TEST(ValidateDataset, ImageShapeMustMatchCount) {
    vmkm::ElementMatrix m(4, 1);
    m << 0, 1, 2, 3;
    EXPECT_NO_THROW(vmkm::validate_dataset(m, vmkm::ImageShape{2, 2, 255}));
    EXPECT_ANY_THROW(vmkm::validate_dataset(m, vmkm::ImageShape{3, 2, 255}));
}

TEST(InitCentersRandom, DeterministicForFixedSeed) {
    const auto ds = ramp(100);
    const auto a = vmkm::init_centers_random(ds, 5, 7);
    const auto b = vmkm::init_centers_random(ds, 5, 7);
    ASSERT_EQ(a.size(), 5u);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, vmkm::init_centers_random(ds, 5, 8));
}

TEST(InitCentersRandom, FullSampleIsPermutation) {
    const auto ds = ramp(37);
    const auto centers = vmkm::init_centers_random(ds, 37, 3);
    std::set<double> seen;
    for (const auto& c : centers) {
        seen.insert(c(0));
    }
    EXPECT_EQ(seen.size(), 37u);
    EXPECT_EQ(*seen.begin(), 0.0);
    EXPECT_EQ(*seen.rbegin(), 36.0);
}

TEST(InitCentersRandom, DistinctIndices) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto idx = vmkm::sample_indices(20, 10, seed);
        std::sort(idx.begin(), idx.end());
        EXPECT_EQ(std::unique(idx.begin(), idx.end()), idx.end());
        EXPECT_LT(idx.back(), 20u);
    }
}

TEST(InitCentersRandom, KTooLarge) {
    const auto ds = ramp(3);
    EXPECT_EQ(kind_of([&] { vmkm::init_centers_random(ds, 5, 0); }), ErrorKind::KTooLarge);
}

TEST(InitCentersExplicit, AdversarialCentersAccepted) {
    const auto ds = ramp(101);
    const std::vector<vmkm::Point> centers(3, vmkm::make_point({200.0}));
    EXPECT_EQ(vmkm::init_centers_explicit(ds, centers), centers);
}

TEST(InitCentersExplicit, DimensionMismatch) {
    const auto ds = ramp(4);
    EXPECT_EQ(kind_of([&] { vmkm::init_centers_explicit(ds, {vmkm::make_point({1.0, 2.0})}); }),
              ErrorKind::DimensionMismatch);
}

TEST(InitCentersExplicit, Identity) {
    const auto ds = ramp(4);
    const auto out = vmkm::init_centers_explicit(ds, {vmkm::make_point({0.0})});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0](0), 0.0);
}

TEST(VmkmParams, Alpha0Bounds) {
    vmkm::VmkmParams p;
    EXPECT_NO_THROW(p.validate());
    for (double bad : {0.0, -0.1, 1.0 / 3.0, 0.5}) {
        p.alpha0 = bad;
        EXPECT_EQ(kind_of([&] { p.validate(); }), ErrorKind::InvalidParameter) << bad;
    }
    p.alpha0 = 0.33;
    EXPECT_NO_THROW(p.validate());
}

TEST(VmkmParams, CapsAndStallFraction) {
    vmkm::VmkmParams p;
    p.max_nested_iterations = 0;
    EXPECT_ANY_THROW(p.validate());
    p = {};
    p.stall_fraction = 1.0;
    EXPECT_ANY_THROW(p.validate());
    p = {};
    p.k = 0;
    EXPECT_ANY_THROW(p.validate());
}

TEST(AlphaState, HandValue) {
    const auto a = vmkm::update_alpha_a(vmkm::AlphaState::initial(0.30), 5);
    EXPECT_NEAR(a.alpha_a, 0.24, 1e-15);
    EXPECT_EQ(a.alpha_b, 0.30);
    const auto b = vmkm::update_alpha_b(vmkm::AlphaState::initial(0.30), 5);
    EXPECT_NEAR(b.alpha_b, 0.24, 1e-15);
    EXPECT_EQ(b.alpha_a, 0.30);
}

TEST(AlphaState, LargeKLimitLeavesAlphaNearlyUnchanged) {
    const auto a = vmkm::update_alpha_a(vmkm::AlphaState::initial(0.30), 1000000000);
    EXPECT_NEAR(a.alpha_a, 0.30, 1e-9);
}

TEST(AlphaState, ClosedFormAndPositivity) {
    for (double a0 : {0.1, 0.3, 0.33}) {
        for (std::size_t k = 2; k <= 10; ++k) {
            auto s = vmkm::AlphaState::initial(a0);
            for (int t = 1; t <= 50; ++t) {
                s = vmkm::update_alpha_b(vmkm::update_alpha_a(s, k), k);
                const double expected = a0 * std::pow(1.0 - 1.0 / static_cast<double>(k), t);
                EXPECT_NEAR(s.alpha_a, expected, 1e-12);
                EXPECT_NEAR(s.alpha_b, expected, 1e-12);
                EXPECT_GT(s.alpha_a, 0.0);
                EXPECT_LE(s.alpha_a, a0);
            }
        }
    }
}

TEST(Rng, ReproducibleStreams) {
    vmkm::Rng a(42);
    vmkm::Rng b(42);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.next(), b.next());
    }
    vmkm::Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        EXPECT_LT(c.uniform_index(7), 7u);
    }
}

TEST(ClusterState, RefreshMatchesBruteForce) {
    vmkm::Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> raw(30, std::vector<double>(2));
        for (auto& row : raw) {
            for (double& x : row) {
                x = rng.normal(0.0, 3.0);
            }
        }
        const auto ds = vmkm::validate_dataset(raw);
        auto state = vmkm::make_initial_state(ds, vmkm::init_centers_random(ds, 4, trial));
        state.assignments.resize(ds.size());
        for (auto& a : state.assignments) {
            a = rng.uniform_index(4);
        }
        vmkm::refresh_statistics(ds, state, 1e-6);
        std::size_t total = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            std::size_t count = 0;
            double f = 0.0;
            for (std::size_t i = 0; i < ds.size(); ++i) {
                if (state.assignments[i] == j) {
                    ++count;
                    f += (ds.element(i) - state.centroids[j]).squaredNorm();
                }
            }
            EXPECT_EQ(state.counts[j], count);
            EXPECT_NEAR(state.fitness[j], f, 1e-9 * std::max(1.0, f));
            if (count > 0) {
                EXPECT_NEAR(state.variances[j], f / static_cast<double>(count), 1e-9);
            }
            total += state.counts[j];
            const Eigen::MatrixXd product = state.covariances[j].matrix * state.covariances[j].inverse;
            EXPECT_LT((product - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-6);
        }
        EXPECT_EQ(total, ds.size());
    }
}

TEST(ClusterState, SmallestPrefersEmptyOnFitnessTie) {
    vmkm::ClusterState s;
    s.k = 3;
    s.fitness = {0.0, 5.0, 0.0};
    s.counts = {4, 3, 0};
    EXPECT_EQ(vmkm::smallest_cluster(s), 2u);
    EXPECT_EQ(vmkm::largest_cluster(s), 1u);
    s.fitness = {2.0, 2.0, 2.0};
    s.counts = {1, 1, 1};
    EXPECT_EQ(vmkm::smallest_cluster(s), 0u);
    EXPECT_EQ(vmkm::largest_cluster(s), 0u);
}

}  // namespace

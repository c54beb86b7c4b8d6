#ifndef VMKM_IO_REPORT_JSON_HPP
#define VMKM_IO_REPORT_JSON_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "../error.hpp"
#include "../report.hpp"
#include "files.hpp"

namespace vmkm::io {

using Json = nlohmann::json;

namespace detail {

inline Json vector_to_json(const Eigen::VectorXd& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

inline Eigen::VectorXd vector_from_json(const Json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = j.at(i).get<double>();
    }
    return v;
}

inline Json matrix_to_json(const Eigen::MatrixXd& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out.push_back(vector_to_json(m.row(r).transpose()));
    }
    return out;
}

inline Eigen::MatrixXd matrix_from_json(const Json& j) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw Error(ErrorKind::ParseError, "ragged matrix in report");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
        }
    }
    return m;
}

}  // namespace detail

/// Every RunReport field; object keys are emitted in sorted order.
inline Json to_json(const RunReport& report) {
    const auto& s = report.final_state;
    Json centroids = Json::array();
    for (const auto& c : s.centroids) {
        centroids.push_back(detail::vector_to_json(c));
    }
    Json covariances = Json::array();
    for (const auto& cov : s.covariances) {
        covariances.push_back({{"matrix", detail::matrix_to_json(cov.matrix)},
                               {"inverse", detail::matrix_to_json(cov.inverse)},
                               {"epsilon_applied", cov.epsilon_applied}});
    }
    return Json{
        {"algorithm", report.algorithm},
        {"mse", report.mse},
        {"fitness_per_cluster", report.fitness_per_cluster},
        {"main_iterations", report.main_iterations},
        {"nested_iterations_total", report.nested_iterations_total},
        {"nested_iterations_per_main", report.nested_iterations_per_main},
        {"termination_reason", std::string(to_string(report.termination_reason))},
        {"transfers_per_iteration", report.transfers_per_iteration},
        {"seed_used", report.seed_used},
        {"final_alphas", {{"alpha_a", report.final_alphas.alpha_a}, {"alpha_b", report.final_alphas.alpha_b}}},
        {"final_state",
         {{"k", s.k},
          {"centroids", centroids},
          {"assignments", s.assignments},
          {"counts", s.counts},
          {"fitness", s.fitness},
          {"variances", s.variances},
          {"covariances", covariances}}},
    };
}

inline RunReport report_from_json(const Json& j) {
    try {
        RunReport report;
        report.algorithm = j.at("algorithm").get<std::string>();
        report.mse = j.at("mse").get<double>();
        report.fitness_per_cluster = j.at("fitness_per_cluster").get<std::vector<double>>();
        report.main_iterations = j.at("main_iterations").get<std::size_t>();
        report.nested_iterations_total = j.at("nested_iterations_total").get<std::size_t>();
        report.nested_iterations_per_main = j.at("nested_iterations_per_main").get<std::vector<std::size_t>>();
        const auto reason = parse_termination_reason(j.at("termination_reason").get<std::string>());
        if (!reason) {
            throw Error(ErrorKind::ParseError, "unknown termination_reason");
        }
        report.termination_reason = *reason;
        report.transfers_per_iteration = j.at("transfers_per_iteration").get<std::vector<std::size_t>>();
        report.seed_used = j.at("seed_used").get<std::uint64_t>();
        report.final_alphas.alpha_a = j.at("final_alphas").at("alpha_a").get<double>();
        report.final_alphas.alpha_b = j.at("final_alphas").at("alpha_b").get<double>();

        const auto& s = j.at("final_state");
        auto& state = report.final_state;
        state.k = s.at("k").get<std::size_t>();
        for (const auto& c : s.at("centroids")) {
            state.centroids.push_back(detail::vector_from_json(c));
        }
        state.assignments = s.at("assignments").get<std::vector<std::size_t>>();
        state.counts = s.at("counts").get<std::vector<std::size_t>>();
        state.fitness = s.at("fitness").get<std::vector<double>>();
        state.variances = s.at("variances").get<std::vector<double>>();
        for (const auto& cov : s.at("covariances")) {
            state.covariances.push_back({detail::matrix_from_json(cov.at("matrix")),
                                         detail::matrix_from_json(cov.at("inverse")),
                                         cov.at("epsilon_applied").get<double>()});
        }
        return report;
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed report: ") + e.what());
    }
}

inline std::string format_report_json(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

inline RunReport parse_report_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
    }
    return report_from_json(j);
}

inline void write_report_json(const std::filesystem::path& path, const RunReport& report) {
    write_file_atomic(path, format_report_json(report));
}

inline RunReport read_report_json(const std::filesystem::path& path) { return parse_report_json(read_file(path)); }

}  // namespace vmkm::io

#endif  // VMKM_IO_REPORT_JSON_HPP

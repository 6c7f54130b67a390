#include "evochain/local_tensor.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "evochain/errors.hpp"

namespace evochain {

namespace {
constexpr double kSliceTolerance = 1e-12;
}

LocalTransitionMatrix::LocalTransitionMatrix(int r, std::vector<double> b) : r_(r), b_(std::move(b)) {
    if (r_ < 2) throw ParameterError("local transition matrix needs r >= 2");
    size_t want = static_cast<size_t>(r_) * r_ * r_ * r_;
    if (b_.size() != want) throw ParameterError("local transition matrix has wrong element count");
    for (double x : b_) {
        if (x < 0.0 || !std::isfinite(x)) throw ParameterError("tensor entries must be nonnegative");
    }
    for (int u = 0; u < r_; ++u) {
        for (int v = 0; v < r_; ++v) {
            double total = 0.0;
            for (int w = 0; w < r_; ++w) {
                for (int z = 0; z < r_; ++z) total += (*this)(u, v, w, z);
            }
            if (std::abs(total - 1.0) > kSliceTolerance) {
                throw ParameterError("tensor slice (u=" + std::to_string(u) + ",v=" + std::to_string(v) +
                                     ") sums to " + std::to_string(total) + ", expected 1");
            }
        }
    }
}

LocalTransitionMatrix identity_tensor(int r) {
    std::vector<double> b(static_cast<size_t>(r) * r * r * r, 0.0);
    for (int u = 0; u < r; ++u) {
        for (int v = 0; v < r; ++v) {
            b[static_cast<size_t>(((u * r + v) * r + u)) * r + v] = 1.0;
        }
    }
    return LocalTransitionMatrix(r, std::move(b));
}

LocalTransitionMatrix dictatorial_tensor(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 0.125) {
        throw ParameterError("dictatorial tensor needs 0 < epsilon <= 1/8, got " + std::to_string(epsilon));
    }
    const int r = 2;
    std::vector<double> b(16, 0.0);
    auto at = [&](int u, int v, int w, int z) -> double& {
        return b[static_cast<size_t>(((u * r + v) * r + w)) * r + z];
    };
    const double e = epsilon;
    at(0, 0, 0, 0) = 1 - 4 * e;
    at(0, 0, 1, 0) = e;
    at(0, 0, 0, 1) = e;
    at(0, 0, 1, 1) = 2 * e;
    at(0, 1, 1, 0) = 0.5 - e;
    at(0, 1, 0, 1) = 0.5 - e;
    at(0, 1, 0, 0) = e;
    at(0, 1, 1, 1) = e;
    at(1, 0, 0, 1) = 0.5 - e;
    at(1, 0, 1, 0) = 0.5 - e;
    at(1, 0, 1, 1) = e;
    at(1, 0, 0, 0) = e;
    at(1, 1, 1, 1) = 1 - 4 * e;
    at(1, 1, 0, 1) = e;
    at(1, 1, 1, 0) = e;
    at(1, 1, 0, 0) = 2 * e;
    return LocalTransitionMatrix(r, std::move(b));
}

LocalTransitionMatrix load_tensor_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open tensor file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("tensor file " + path + ": " + e.what());
    }
    if (!j.contains("r") || !j["r"].is_number_integer()) {
        throw ParseError("tensor file " + path + ": missing integer field \"r\"");
    }
    int r = j["r"].get<int>();
    if (r < 2 || r > 64) throw ParseError("tensor file " + path + ": r out of range");
    std::vector<double> b(static_cast<size_t>(r) * r * r * r, 0.0);
    if (!j.contains("b") || !j["b"].is_array()) {
        throw ParseError("tensor file " + path + ": missing array field \"b\"");
    }
    size_t entry = 0;
    for (const auto& row : j["b"]) {
        ++entry;
        if (!row.is_array() || row.size() != 5) {
            throw ParseError("tensor file " + path + ": entry " + std::to_string(entry) +
                             " must be [u,v,w,z,value]");
        }
        int idx[4];
        for (int k = 0; k < 4; ++k) {
            if (!row[static_cast<size_t>(k)].is_number_integer()) {
                throw ParseError("tensor file " + path + ": entry " + std::to_string(entry) +
                                 " has non-integer index");
            }
            idx[k] = row[static_cast<size_t>(k)].get<int>();
            if (idx[k] < 0 || idx[k] >= r) {
                throw ParseError("tensor file " + path + ": entry " + std::to_string(entry) +
                                 " index out of range [0," + std::to_string(r - 1) + "]");
            }
        }
        double value = row[4].get<double>();
        b[static_cast<size_t>(((idx[0] * r + idx[1]) * r + idx[2])) * r + idx[3]] = value;
    }
    try {
        return LocalTransitionMatrix(r, std::move(b));
    } catch (const ParameterError& e) {
        throw ParseError("tensor file " + path + ": " + e.what());
    }
}

std::string tensor_to_json(const LocalTransitionMatrix& b) {
    nlohmann::json entries = nlohmann::json::array();
    int r = b.r();
    for (int u = 0; u < r; ++u) {
        for (int v = 0; v < r; ++v) {
            for (int w = 0; w < r; ++w) {
                for (int z = 0; z < r; ++z) {
                    if (b(u, v, w, z) != 0.0) entries.push_back({u, v, w, z, b(u, v, w, z)});
                }
            }
        }
    }
    nlohmann::json j{{"r", r}, {"b", entries}};
    return j.dump(2);
}

}  // namespace evochain

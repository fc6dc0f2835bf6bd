#pragma once

// Network weight serialization: a JSON document with keys
// {dims, weights (row-major per layer), biases, seed}.

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hpsplinet/net.hpp"

namespace hps {

inline nlohmann::json model_to_json(const MlpNetwork& net) {
    nlohmann::json j;
    j["dims"] = net.layer_dims();
    j["weights"] = net.weights_;
    j["biases"] = net.biases_;
    j["seed"] = net.seed();
    return j;
}

inline MlpNetwork model_from_json(const nlohmann::json& j) {
    std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    if (dims.size() < 3 || dims.back() != 1)
        throw std::invalid_argument("model: dims must be [input, hidden..., 1]");
    for (std::size_t l = 1; l + 1 < dims.size(); ++l)
        if (dims[l] != dims[1])
            throw std::invalid_argument("model: hidden widths must be uniform");
    MlpSpec spec{dims.front(), static_cast<int>(dims.size()), dims.size() > 2 ? dims[1] : 1};
    return MlpNetwork::from_parameters(spec,
                                       j.at("weights").get<std::vector<std::vector<double>>>(),
                                       j.at("biases").get<std::vector<std::vector<double>>>(),
                                       j.value("seed", std::uint64_t{0}));
}

inline void save_model(const MlpNetwork& net, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open model file for writing: " + path);
    out << model_to_json(net).dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing model file: " + path);
}

inline MlpNetwork load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    nlohmann::json j;
    in >> j;
    return model_from_json(j);
}

}  // namespace hps

#include "m5x/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace m5x {

namespace {

using nlohmann::json;

Copula parse_copula(const json& c, int d) {
    const std::string kind = c.at("kind").get<std::string>();
    if (kind == "independence") return Copula::independence(d);
    if (kind == "comonotone") return Copula::comonotone(d);
    if (kind == "logistic") {
        if (!c.contains("alpha"))
            throw ValidationError("model.copula: logistic kind needs an \"alpha\" >= 1");
        return Copula::logistic(d, c.at("alpha").get<double>());
    }
    throw ValidationError("model.copula.kind must be independence, comonotone or logistic, got \"" +
                          kind + "\"");
}

M5Model parse_model(const json& mj) {
    const int d = mj.at("d").get<int>();
    const int patterns = mj.at("L").get<int>();
    const int k_min = mj.at("k_min").get<int>();
    const int k_max = mj.at("k_max").get<int>();
    SignatureArray sig(d, patterns, k_min, k_max);

    std::set<std::tuple<int, int, int>> seen;
    for (const auto& w : mj.at("weights")) {
        const int l = w.at("l").get<int>();
        const int k = w.at("k").get<int>();
        const int j = w.at("j").get<int>();
        const double value = w.at("w").get<double>();
        const std::string where =
            "(l=" + std::to_string(l) + ",k=" + std::to_string(k) + ",j=" + std::to_string(j) + ")";
        if (l < 1 || l > patterns || k < k_min || k > k_max || j < 1 || j > d)
            throw ValidationError("model.weights: entry " + where + " outside the declared ranges");
        if (!seen.insert({l, k, j}).second)
            throw ValidationError("model.weights: duplicate entry " + where);
        if (!(value >= 0.0))
            throw ValidationError("model.weights: negative weight " + std::to_string(value) +
                                  " at " + where);
        sig.at(l, k, j) = value;
    }
    return M5Model(std::move(sig), parse_copula(mj.at("copula"), d));
}

ExperimentConfig parse_json(const json& doc) {
    ExperimentConfig cfg(parse_model(doc.at("model")));
    const int d = cfg.model.dim();

    if (doc.contains("sim")) {
        const auto& s = doc.at("sim");
        if (s.contains("n")) cfg.n = s.at("n").get<std::int64_t>();
        if (s.contains("reps")) cfg.reps = s.at("reps").get<std::int64_t>();
        if (s.contains("seed")) cfg.seed = s.at("seed").get<std::uint64_t>();
    }
    if (cfg.n < 1 || cfg.reps < 1) throw ValidationError("sim: need n >= 1 and reps >= 1");

    if (doc.contains("tau_list")) {
        for (const auto& t : doc.at("tau_list")) {
            std::vector<double> tau = t.get<std::vector<double>>();
            if (tau.size() != static_cast<std::size_t>(d))
                throw ValidationError("tau_list: each entry needs " + std::to_string(d) +
                                      " coordinates");
            for (double v : tau)
                if (!(v > 0.0)) throw ValidationError("tau_list: coordinates must be positive");
            cfg.tau_list.push_back(std::move(tau));
        }
    }
    if (cfg.tau_list.empty())
        cfg.tau_list.push_back(std::vector<double>(static_cast<std::size_t>(d), 1.0));

    if (doc.contains("u_levels")) cfg.u_levels = doc.at("u_levels").get<std::vector<double>>();
    if (cfg.u_levels.empty()) cfg.u_levels = {0.95, 0.99};
    for (double u : cfg.u_levels)
        if (!(u > 0.0 && u < 1.0)) throw ValidationError("u_levels must lie in (0,1)");

    if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();
    if (doc.contains("commands")) cfg.commands = doc.at("commands").get<std::vector<std::string>>();
    if (cfg.commands.empty()) cfg.commands = {"theory"};
    for (const auto& c : cfg.commands)
        if (c != "theory" && c != "simulate" && c != "verify")
            throw ValidationError("commands: unknown command \"" + c + "\"");
    return cfg;
}

ExperimentConfig parse_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    try {
        return parse_json(doc);
    } catch (const json::exception& e) {
        throw ValidationError(origin + ": " + e.what());
    } catch (const Error& e) {
        throw ValidationError(origin + ": " + e.what());
    }
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot read config file " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_text(text, path);
}

ExperimentConfig parse_config(const std::string& text) { return parse_text(text, "config"); }

}  // namespace m5x

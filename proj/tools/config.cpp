#include "config.hpp"

#include "gasp/error.hpp"

#include <fstream>
#include <sstream>

namespace gasp::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ParameterError("config key '" + key + "' needs a number, got '" + value + "'");
    }
    if (used != value.size()) {
        throw ParameterError("config key '" + key + "' needs a number, got '" + value + "'");
    }
    return v;
}

int to_int(const std::string& key, const std::string& value)
{
    const double v = to_double(key, value);
    if (v != static_cast<int>(v)) {
        throw ParameterError("config key '" + key + "' needs an integer, got '" + value + "'");
    }
    return static_cast<int>(v);
}

} // namespace

void RunConfig::validate() const
{
    params().validate();
    if (!(radius > 0.0)) {
        throw ParameterError("radius must be positive");
    }
    if (n_theta < 4 || n_phi < 4 || (n_r != 0 && n_r < 4)) {
        throw ParameterError("mesh parameters must be at least 4");
    }
    if (!(grading >= 1.0)) {
        throw ParameterError("grading must be at least 1");
    }
    if (!(tol > 0.0)) {
        throw ParameterError("tol must be positive");
    }
    if (threads < 0) {
        throw ParameterError("threads must be non-negative");
    }
}

void apply_config(std::istream& in, RunConfig& cfg)
{
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("config line " + std::to_string(number) + " is not key=value: " + line);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "alpha") {
            cfg.alpha = to_double(key, value);
        } else if (key == "radius") {
            cfg.radius = to_double(key, value);
        } else if (key == "ntheta" || key == "n_theta") {
            cfg.n_theta = to_int(key, value);
        } else if (key == "nphi" || key == "n_phi") {
            cfg.n_phi = to_int(key, value);
        } else if (key == "nr" || key == "n_r") {
            cfg.n_r = to_int(key, value);
        } else if (key == "grading") {
            cfg.grading = to_double(key, value);
        } else if (key == "tol") {
            cfg.tol = to_double(key, value);
        } else if (key == "seed") {
            const double v = to_double(key, value);
            if (v < 0.0 || v != static_cast<double>(static_cast<std::uint64_t>(v))) {
                throw ParameterError("seed must be a non-negative integer");
            }
            cfg.seed = static_cast<std::uint64_t>(v);
        } else if (key == "threads") {
            cfg.threads = to_int(key, value);
        } else if (key == "out" || key == "output_path") {
            cfg.output_path = value;
        } else {
            throw ParameterError("unknown config key '" + key + "'");
        }
    }
}

void apply_config_file(const std::string& path, RunConfig& cfg)
{
    std::ifstream in(path);
    if (!in) {
        throw ParameterError("cannot read config file " + path);
    }
    apply_config(in, cfg);
}

std::vector<std::vector<double>> read_csv(const std::string& path, std::size_t columns)
{
    std::ifstream in(path);
    if (!in) {
        throw ParameterError("cannot read " + path);
    }
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    int number = 1;
    while (std::getline(in, line)) {
        ++number;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::stringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            row.push_back(to_double(path + ":" + std::to_string(number), trim(cell)));
        }
        if (row.size() != columns) {
            throw ParameterError(path + ":" + std::to_string(number) + " needs " + std::to_string(columns) + " columns");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> parse_point(const std::string& text)
{
    std::vector<double> out;
    std::stringstream cells(text);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
        out.push_back(to_double("point", trim(cell)));
    }
    return out;
}

} // namespace gasp::cli

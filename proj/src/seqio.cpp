#include "seqforge/seqio.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "seqforge/errors.hpp"

namespace seqforge {

namespace {

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw ConfigError("failed while writing " + path.string());
    }
}

// Header `# seqforge <kind> v1 N=<n>`; returns n.
std::size_t parse_header(const std::string& line, const std::string& kind,
                         const std::filesystem::path& path) {
    const std::string prefix = "# seqforge " + kind + " v1 N=";
    if (line.rfind(prefix, 0) != 0) {
        throw ConfigError(path.string() + ": expected header '" + prefix +
                          "<n>'");
    }
    const std::string tail = line.substr(prefix.size());
    char* end = nullptr;
    const unsigned long long n = std::strtoull(tail.c_str(), &end, 10);
    if (end == tail.c_str() || *end != '\0' || n == 0) {
        throw ConfigError(path.string() + ": bad length in header");
    }
    return static_cast<std::size_t>(n);
}

double parse_value(const std::string& line, std::size_t line_no,
                   const std::filesystem::path& path) {
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    while (end != nullptr && (*end == ' ' || *end == '\t')) {
        ++end;
    }
    if (end == line.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ConfigError(path.string() + ": line " + std::to_string(line_no) +
                          " is not a finite number");
    }
    return v;
}

std::vector<double> read_value_file(const std::filesystem::path& path,
                                    const std::string& kind,
                                    std::size_t* n_out) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError(path.string() + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    *n_out = parse_header(line, kind, path);

    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        values.push_back(parse_value(line, line_no, path));
    }
    return values;
}

} // namespace

void write_sequence(const std::filesystem::path& path,
                    const UnitModulusSequence& seq) {
    std::ofstream out = open_for_write(path);
    out << "# seqforge phases v1 N=" << seq.length() << '\n';
    for (double phi : seq.phases) {
        out << format_full(phi) << '\n';
    }
    finish_write(out, path);
}

UnitModulusSequence read_sequence(const std::filesystem::path& path) {
    std::size_t n = 0;
    std::vector<double> values = read_value_file(path, "phases", &n);
    if (values.size() != n) {
        throw ConfigError(path.string() + ": header says N=" +
                          std::to_string(n) + " but found " +
                          std::to_string(values.size()) + " values");
    }
    return make_sequence(std::move(values));
}

void write_weights(const std::filesystem::path& path, std::size_t n,
                   const WeightVector& weights) {
    if (weights.lags() + 1 != n) {
        throw ConfigError("write_weights(): weight count must be N-1");
    }
    std::ofstream out = open_for_write(path);
    out << "# seqforge weights v1 N=" << n << '\n';
    for (double w : weights.w) {
        out << format_full(w) << '\n';
    }
    finish_write(out, path);
}

WeightsFile read_weights(const std::filesystem::path& path) {
    std::size_t n = 0;
    std::vector<double> values = read_value_file(path, "weights", &n);
    if (values.size() + 1 != n) {
        throw ConfigError(path.string() + ": header says N=" +
                          std::to_string(n) + " but found " +
                          std::to_string(values.size()) + " weights");
    }
    return WeightsFile{n, make_weights(std::move(values))};
}

void write_convergence_csv(const std::filesystem::path& path,
                           const ConvergenceRecord& record) {
    std::ofstream out = open_for_write(path);
    out << "iter,objective,cum_seconds,backtracks\n";
    for (std::size_t i = 0; i < record.objective.size(); ++i) {
        out << i << ',' << format_full(record.objective[i]) << ','
            << format_full(record.cum_seconds[i]) << ','
            << record.backtracks[i] << '\n';
    }
    finish_write(out, path);
}

void write_correlation_levels_csv(const std::filesystem::path& path,
                                  std::span<const double> levels) {
    if (levels.size() % 2 == 0) {
        throw ConfigError("correlation level table must have 2N-1 entries");
    }
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(levels.size() / 2);
    std::ofstream out = open_for_write(path);
    out << "lag,level_db\n";
    for (std::ptrdiff_t lag = -half; lag <= half; ++lag) {
        out << lag << ','
            << format_full(levels[static_cast<std::size_t>(lag + half)])
            << '\n';
    }
    finish_write(out, path);
}

void write_metrics_json(const std::filesystem::path& path,
                        const MetricsReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    j["isl"] = report.isl;
    j["psl"] = report.psl;
    if (report.wisl) {
        j["wisl"] = *report.wisl;
    }
    if (report.lp) {
        j["lp"] = *report.lp;
        j["p"] = report.p.value_or(2.0);
    }
    j["correlation_level_path"] = report.correlation_level_path;
    std::ofstream out = open_for_write(path);
    out << j.dump(2) << '\n';
    finish_write(out, path);
}

} // namespace seqforge

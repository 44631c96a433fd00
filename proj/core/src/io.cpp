#include "arfima/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace arfima {

namespace {

std::string trim(const std::string& s) {
    auto b = s.begin();
    auto e = s.end();
    while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
    return {b, e};
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& raw, const std::string& what) {
    const std::string s = trim(raw);
    if (s.empty()) throw Error("missing value in " + what);
    double v = 0.0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw Error("cannot parse number '" + s + "' in " + what);
    }
    return v;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

}  // namespace

TimeSeries read_csv_series(std::istream& in, const std::string& source, const std::string& column) {
    std::string line;
    if (!std::getline(in, line)) throw Error(source + ": empty input");
    const auto header = split_csv_line(line);
    int value_col = -1;
    int time_col = -1;
    if (!column.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (trim(header[i]) == column) value_col = static_cast<int>(i);
        }
        if (value_col < 0) throw Error(source + ": no column named '" + column + "'");
    } else if (header.size() == 1) {
        value_col = 0;
    } else {
        for (std::size_t i = 0; i < header.size(); ++i) {
            const std::string name = trim(header[i]);
            if (name == "value") value_col = static_cast<int>(i);
            if (name == "time" || name == "t" || name == "index") time_col = static_cast<int>(i);
        }
        if (value_col < 0) {
            throw Error(source + ": ambiguous input; use --column to pick one of " +
                        std::to_string(header.size()) + " columns");
        }
    }
    if (time_col < 0 && header.size() > 1) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            const std::string name = trim(header[i]);
            if (name == "time" || name == "t" || name == "index") time_col = static_cast<int>(i);
        }
    }

    TimeSeries series;
    series.source = source;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) <= value_col) {
            throw Error(source + ": line " + std::to_string(lineno) + " has too few fields");
        }
        series.values.push_back(
            parse_double(fields[static_cast<std::size_t>(value_col)],
                         source + " line " + std::to_string(lineno)));
        if (time_col >= 0 && static_cast<int>(fields.size()) > time_col) {
            series.time.push_back(parse_double(fields[static_cast<std::size_t>(time_col)],
                                               source + " line " + std::to_string(lineno)));
        }
    }
    if (series.values.empty()) throw Error(source + ": no data rows");
    return series;
}

TimeSeries read_csv_series_file(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_csv_series(in, path, column);
}

Matrix read_csv_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw Error(path + ": empty input");
    const std::size_t ncol = split_csv_line(line).size();
    std::vector<Vector> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != ncol) {
            throw Error(path + ": line " + std::to_string(lineno) + " has " +
                        std::to_string(fields.size()) + " fields, expected " + std::to_string(ncol));
        }
        Vector row(ncol);
        for (std::size_t c = 0; c < ncol; ++c) {
            row[c] = parse_double(fields[c], path + " line " + std::to_string(lineno));
        }
        rows.push_back(std::move(row));
    }
    Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(ncol));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < ncol; ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return out;
}

void write_csv_series(std::ostream& out, const TimeSeries& series, const std::string& column) {
    out << column << "\n";
    out.precision(17);
    for (double v : series.values) out << v << "\n";
}

StudyConfig parse_study_config(std::istream& in) {
    StudyConfig config;
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> problems;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }

    const auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    try {
        if (auto v = take("d_values")) {
            for (const auto& s : split_list(*v)) config.d_values.push_back(parse_double(s, "d_values"));
        }
        if (auto v = take("n_values")) {
            for (const auto& s : split_list(*v)) {
                config.n_values.push_back(static_cast<int>(parse_double(s, "n_values")));
            }
        }
        if (auto v = take("replications")) config.replications = static_cast<int>(parse_double(*v, "replications"));
        if (auto v = take("objectives")) {
            for (const auto& s : split_list(*v)) config.objectives.push_back(objective_from_name(s));
        }
        if (auto v = take("d_bar_values")) {
            if (trim(*v) == "adaptive") {
                // procedure list supplied via epsilon_values
            } else {
                for (const auto& s : split_list(*v)) {
                    Procedure proc;
                    proc.kind = Procedure::Kind::FixedBound;
                    proc.d_bar = parse_double(s, "d_bar_values");
                    config.procedures.push_back(proc);
                }
            }
        }
        if (auto v = take("epsilon_values")) {
            for (const auto& s : split_list(*v)) {
                Procedure proc;
                proc.kind = Procedure::Kind::Adaptive;
                proc.epsilon = parse_double(s, "epsilon_values");
                config.procedures.push_back(proc);
            }
        }
        if (auto v = take("seed")) config.seed = static_cast<std::uint64_t>(parse_double(*v, "seed"));
        if (auto v = take("parallelism")) config.parallelism = static_cast<int>(parse_double(*v, "parallelism"));
        if (auto v = take("delta")) config.delta = parse_double(*v, "delta");
        if (auto v = take("ci_level")) config.ci_level = parse_double(*v, "ci_level");
        if (auto v = take("d_bar_max")) config.d_bar_max = parse_double(*v, "d_bar_max");
    } catch (const Error& e) {
        problems.push_back(e.what());
    }
    for (const auto& [key, value] : kv) {
        problems.push_back("unknown key '" + key + "'");
        (void)value;
    }
    if (config.objectives.empty()) config.objectives.push_back(Objective::exact());
    if (!problems.empty()) {
        std::string joined = "invalid study configuration:";
        for (const auto& p : problems) joined += "\n  - " + p;
        throw Error(joined);
    }
    config.validate();
    return config;
}

StudyConfig parse_study_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return parse_study_config(in);
}

std::string study_results_csv_header() {
    return "d,n,objective,procedure,requested,successes,failures,mean_d_hat,bias,abs_bias,"
           "mc_sd,rmse,mean_se,coverage,mean_sigma2_hat,mean_d_bar_final";
}

std::string study_results_csv_row(const CellSummary& cell) {
    std::ostringstream os;
    os.precision(17);
    os << cell.key.d << ',' << cell.key.n << ',' << cell.key.objective.name() << ','
       << '"' << cell.key.procedure.label() << '"' << ',' << cell.requested << ','
       << cell.successes << ',' << cell.failure_count << ',' << cell.mean_d_hat << ','
       << cell.bias << ',' << cell.abs_bias << ',' << cell.mc_sd << ',' << cell.rmse << ','
       << cell.mean_se << ',' << cell.coverage << ',' << cell.mean_sigma2_hat << ','
       << cell.mean_d_bar_final;
    return os.str();
}

std::string raw_records_csv_header() {
    return "rep,failed,d_hat,se,lower,upper,sigma2_hat,d_bar_final";
}

std::string raw_records_csv_row(const ReplicationRecord& rec) {
    std::ostringstream os;
    os.precision(17);
    os << rec.rep << ',' << (rec.failed ? 1 : 0) << ',' << rec.d_hat << ',' << rec.se << ','
       << rec.lower << ',' << rec.upper << ',' << rec.sigma2_hat << ',' << rec.d_bar_final;
    return os.str();
}

std::string study_summary_json(const StudyConfig& config, const std::vector<CellSummary>& cells) {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["seed"] = config.seed;
    doc["replications"] = config.replications;
    doc["cells"] = nlohmann::json::array();
    for (const auto& cell : cells) {
        nlohmann::json c;
        c["d"] = cell.key.d;
        c["n"] = cell.key.n;
        c["objective"] = cell.key.objective.name();
        c["procedure"] = cell.key.procedure.label();
        c["successes"] = cell.successes;
        c["failures"] = cell.failure_count;
        c["mean_d_hat"] = cell.mean_d_hat;
        c["bias"] = cell.bias;
        c["abs_bias"] = cell.abs_bias;
        c["mc_sd"] = cell.mc_sd;
        c["rmse"] = cell.rmse;
        c["mean_se"] = cell.mean_se;
        c["coverage"] = cell.coverage;
        c["mean_sigma2_hat"] = cell.mean_sigma2_hat;
        c["mean_d_bar_final"] = cell.mean_d_bar_final;
        doc["cells"].push_back(std::move(c));
    }
    return doc.dump(2);
}

}  // namespace arfima

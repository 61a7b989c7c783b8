#include "duelbench/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace duelbench {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string_view unquote(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument(std::string(what) + ": '" + std::string(text) + "' is not a non-negative integer");
    }
    return v;
}

double parse_double(std::string_view text, std::string_view what) {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument(std::string(what) + ": '" + std::string(text) + "' is not a number");
    }
    return v;
}

std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(',', start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

// "[a, b, c]" -> {a, b, c}; "[]" -> {}.
std::vector<std::string_view> parse_list(std::string_view text, std::string_view what) {
    text = trim(text);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw std::invalid_argument(std::string(what) + ": expected a list like [a, b], got '" + std::string(text) + "'");
    }
    const auto body = trim(text.substr(1, text.size() - 2));
    if (body.empty()) return {};
    auto items = split_commas(body);
    for (auto& item : items) {
        item = unquote(item);
        if (item.empty()) {
            throw std::invalid_argument(std::string(what) + ": empty list element");
        }
    }
    return items;
}

std::string exact(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

bool starts_with_call(std::string_view s, std::string_view fn) {
    return s.size() > fn.size() + 1 && s.substr(0, fn.size()) == fn && s[fn.size()] == '(' && s.back() == ')';
}

}  // namespace

std::string MatrixSource::to_text() const {
    switch (kind) {
        case Kind::dataset:
        case Kind::file: return name;
        case Kind::uniform: return "uniform(" + std::to_string(arms) + ", " + exact(p) + ")";
        case Kind::probit: {
            std::string s = "probit([";
            for (std::size_t i = 0; i < utilities.size(); ++i) {
                if (i) s += ", ";
                s += exact(utilities[i]);
            }
            return s + "], " + exact(sigma) + ")";
        }
    }
    return name;
}

std::string MatrixSource::label() const {
    switch (kind) {
        case Kind::dataset: return name;
        case Kind::file: {
            std::string s = name;
            std::replace(s.begin(), s.end(), ',', '_');
            return s;
        }
        case Kind::uniform: return "uniform-" + std::to_string(arms) + "-" + format_decimal(p);
        case Kind::probit: return "probit-" + std::to_string(utilities.size()) + "-" + format_decimal(sigma);
    }
    return name;
}

MatrixSource parse_matrix_source(std::string_view text) {
    text = unquote(text);
    if (text.empty()) {
        throw std::invalid_argument("matrix: empty source");
    }
    MatrixSource src;
    const auto names = dataset_names();
    if (std::find(names.begin(), names.end(), text) != names.end()) {
        src.kind = MatrixSource::Kind::dataset;
        src.name = std::string(text);
        return src;
    }
    if (starts_with_call(text, "uniform")) {
        const auto args = split_commas(text.substr(8, text.size() - 9));
        if (args.size() != 2) {
            throw std::invalid_argument("matrix: uniform(n, p) takes two arguments");
        }
        src.kind = MatrixSource::Kind::uniform;
        src.arms = parse_u64(args[0], "matrix: uniform arm count");
        src.p = parse_double(args[1], "matrix: uniform probability");
        return src;
    }
    if (starts_with_call(text, "probit")) {
        const auto body = trim(text.substr(7, text.size() - 8));
        const auto close = body.find(']');
        if (body.empty() || body.front() != '[' || close == std::string_view::npos) {
            throw std::invalid_argument("matrix: probit([u1, u2, ...], sigma) expects a utility list first");
        }
        const auto rest = trim(body.substr(close + 1));
        if (rest.empty() || rest.front() != ',') {
            throw std::invalid_argument("matrix: probit([u1, u2, ...], sigma) is missing sigma");
        }
        src.kind = MatrixSource::Kind::probit;
        for (const auto item : parse_list(body.substr(0, close + 1), "matrix: probit utilities")) {
            src.utilities.push_back(parse_double(item, "matrix: probit utility"));
        }
        src.sigma = parse_double(rest.substr(1), "matrix: probit sigma");
        return src;
    }
    src.kind = MatrixSource::Kind::file;
    src.name = std::string(text);
    return src;
}

PreferenceMatrix load_matrix(const MatrixSource& source) {
    switch (source.kind) {
        case MatrixSource::Kind::dataset: return dataset(source.name);
        case MatrixSource::Kind::file: return read_matrix_file(source.name);
        case MatrixSource::Kind::uniform: return uniform_matrix(source.arms, source.p);
        case MatrixSource::Kind::probit: return probit_matrix(source.utilities, source.sigma);
    }
    throw std::invalid_argument("unknown matrix source");
}

std::vector<double> source_utilities(const MatrixSource& source, const PreferenceMatrix& matrix) {
    if (source.kind == MatrixSource::Kind::probit) return source.utilities;
    return utilities_from_matrix(matrix);
}

std::vector<std::uint64_t> log_checkpoints(std::uint64_t horizon) {
    std::vector<std::uint64_t> points;
    for (std::uint64_t decade = 1; decade <= horizon; decade *= 10) {
        for (const std::uint64_t m : {1, 2, 5}) {
            const auto t = decade * m;
            if (t <= horizon) points.push_back(t);
        }
        if (decade > horizon / 10) break;
    }
    if (points.empty() || points.back() != horizon) points.push_back(horizon);
    return points;
}

std::vector<std::uint64_t> ExperimentConfig::effective_checkpoints() const {
    return checkpoints ? *checkpoints : log_checkpoints(horizon);
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream out;
    out << "matrix = " << matrix.to_text() << '\n';
    out << "policy = " << duelbench::to_string(policy.kind) << '\n';
    if (policy.kind == PolicyKind::ws_s) out << "beta = " << exact(policy.beta) << '\n';
    if (policy.kind == PolicyKind::rucb) out << "alpha = " << exact(policy.alpha) << '\n';
    out << "horizon = " << horizon << '\n';
    out << "replications = " << replications << '\n';
    out << "seed = " << seed << '\n';
    out << "regret = [";
    for (std::size_t i = 0; i < regret.size(); ++i) {
        out << (i ? ", " : "") << '"' << duelbench::to_string(regret[i]) << '"';
    }
    out << "]\n";
    const auto points = effective_checkpoints();
    out << "checkpoints = [";
    for (std::size_t i = 0; i < points.size(); ++i) out << (i ? ", " : "") << points[i];
    out << "]\n";
    return out.str();
}

std::string ExperimentConfig::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : to_text()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    bool have_matrix = false;
    std::vector<std::string> seen;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const auto value = trim(line.substr(eq + 1));
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
        seen.push_back(key);
        try {
            if (key == "matrix") {
                cfg.matrix = parse_matrix_source(value);
                have_matrix = true;
            } else if (key == "policy") {
                cfg.policy.kind = parse_policy_kind(unquote(value));
            } else if (key == "beta") {
                cfg.policy.beta = parse_double(value, "beta");
            } else if (key == "alpha") {
                cfg.policy.alpha = parse_double(value, "alpha");
            } else if (key == "horizon") {
                cfg.horizon = parse_u64(value, "horizon");
            } else if (key == "replications") {
                cfg.replications = parse_u64(value, "replications");
            } else if (key == "seed") {
                cfg.seed = parse_u64(value, "seed");
            } else if (key == "threads") {
                cfg.threads = static_cast<unsigned>(parse_u64(value, "threads"));
            } else if (key == "regret") {
                cfg.regret.clear();
                for (const auto item : parse_list(value, "regret")) cfg.regret.push_back(parse_regret_kind(item));
            } else if (key == "checkpoints") {
                std::vector<std::uint64_t> points;
                for (const auto item : parse_list(value, "checkpoints")) points.push_back(parse_u64(item, "checkpoints"));
                cfg.checkpoints = std::move(points);
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_matrix) {
        throw std::invalid_argument("config is missing the 'matrix' key");
    }
    check_config(cfg);
    return cfg;
}

ExperimentConfig parse_config_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_config(in);
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file '" + path + "'");
    }
    return parse_config(in);
}

void check_config(const ExperimentConfig& config) {
    if (config.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (config.replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (config.regret.empty()) throw std::invalid_argument("regret list must not be empty");
    for (std::size_t i = 0; i < config.regret.size(); ++i) {
        for (std::size_t j = i + 1; j < config.regret.size(); ++j) {
            if (config.regret[i] == config.regret[j]) {
                throw std::invalid_argument("regret kind '" + std::string(to_string(config.regret[i])) + "' listed twice");
            }
        }
    }
    if (config.checkpoints) {
        const auto& pts = *config.checkpoints;
        if (pts.empty()) throw std::invalid_argument("checkpoint list must not be empty");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i] < 1 || pts[i] > config.horizon) {
                throw std::invalid_argument("checkpoint " + std::to_string(pts[i]) + " is outside [1, horizon]");
            }
            if (i && pts[i] <= pts[i - 1]) {
                throw std::invalid_argument("checkpoints must be strictly increasing");
            }
        }
    }
    check_policy_spec(config.policy);
}

}  // namespace duelbench

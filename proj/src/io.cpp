#include "cryscreen/io.hpp"

#include "cryscreen/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>
#include <vector>

namespace cryscreen {

using nlohmann::json;

namespace {

constexpr std::string_view kFeaturesMagic = "# cryscreen-features v1";
constexpr std::string_view kModelMagic = "cryscreen-model";

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const std::string& context) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '+')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        parse_error("bad number '" + std::string(s) + "' in " + context);
    }
    return v;
}

std::size_t parse_size(std::string_view s, const std::string& context) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        parse_error("bad integer '" + std::string(s) + "' in " + context);
    }
    return v;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;

std::string hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json config_to_json(const FeatureConfig& c) {
    return {{"window_length", c.window_length}, {"sample_rate", c.sample_rate_hz},
            {"frame_len", c.frame_len},         {"hop", c.hop},
            {"n_filters", c.n_filters},         {"n_coeffs", c.n_coeffs},
            {"alpha", c.alpha},                 {"floor", c.floor},
            {"f_low", c.f_low_hz},              {"f_high", c.f_high_hz}};
}

FeatureConfig config_from_json(const json& j) {
    FeatureConfig c;
    c.window_length = j.at("window_length").get<std::size_t>();
    c.sample_rate_hz = j.at("sample_rate").get<double>();
    c.frame_len = j.at("frame_len").get<std::size_t>();
    c.hop = j.at("hop").get<std::size_t>();
    c.n_filters = j.at("n_filters").get<std::size_t>();
    c.n_coeffs = j.at("n_coeffs").get<std::size_t>();
    c.alpha = j.at("alpha").get<double>();
    c.floor = j.at("floor").get<double>();
    c.f_low_hz = j.at("f_low").get<double>();
    c.f_high_hz = j.at("f_high").get<double>();
    return c;
}

json cell_to_json(const GridCell& c) {
    return {{"primary", c.primary}, {"gamma", c.gamma}, {"cv_error", c.failed ? json() : json(c.cv_error)},
            {"converged", c.converged}, {"failed", c.failed}};
}

GridCell cell_from_json(const json& j) {
    GridCell c;
    c.primary = j.at("primary").get<double>();
    c.gamma = j.at("gamma").get<double>();
    c.failed = j.at("failed").get<bool>();
    c.converged = j.at("converged").get<bool>();
    c.cv_error = c.failed ? std::numeric_limits<double>::infinity() : j.at("cv_error").get<double>();
    return c;
}

}  // namespace

// ---- features CSV ------------------------------------------------------------

std::string feature_config_line(const FeatureConfig& c) {
    std::ostringstream out;
    out << kFeaturesMagic << " window_length=" << c.window_length
        << " sample_rate=" << shortest(c.sample_rate_hz) << " frame_len=" << c.frame_len
        << " hop=" << c.hop << " n_filters=" << c.n_filters << " n_coeffs=" << c.n_coeffs
        << " alpha=" << shortest(c.alpha) << " floor=" << shortest(c.floor)
        << " f_low=" << shortest(c.f_low_hz) << " f_high=" << shortest(c.f_high_hz);
    return out.str();
}

FeatureConfig parse_feature_config_line(const std::string& line) {
    if (line.rfind(kFeaturesMagic, 0) != 0) parse_error("missing features header line");
    std::map<std::string, std::string> kv;
    std::istringstream in(line.substr(kFeaturesMagic.size()));
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) parse_error("malformed header token '" + token + "'");
        kv[token.substr(0, eq)] = token.substr(eq + 1);
    }
    auto need = [&](const char* key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) parse_error(std::string("features header lacks ") + key);
        return it->second;
    };
    FeatureConfig c;
    c.window_length = parse_size(need("window_length"), "header");
    c.sample_rate_hz = parse_double(need("sample_rate"), "header");
    c.frame_len = parse_size(need("frame_len"), "header");
    c.hop = parse_size(need("hop"), "header");
    c.n_filters = parse_size(need("n_filters"), "header");
    c.n_coeffs = parse_size(need("n_coeffs"), "header");
    c.alpha = parse_double(need("alpha"), "header");
    c.floor = parse_double(need("floor"), "header");
    c.f_low_hz = parse_double(need("f_low"), "header");
    c.f_high_hz = parse_double(need("f_high"), "header");
    return c;
}

std::string feature_fingerprint(const FeatureConfig& config) {
    const std::string line = feature_config_line(config);
    return hex(fnv1a(kFnvOffset, line.data(), line.size()));
}

void write_features_csv(std::ostream& out, const FeatureConfig& config, const LabeledDataset& ds) {
    out << feature_config_line(config) << '\n';
    out << "label";
    const std::size_t frames = config.frame_count();
    for (std::size_t f = 0; f < frames; ++f) {
        for (std::size_t k = 1; k <= config.n_coeffs; ++k) {
            char name[32];
            std::snprintf(name, sizeof name, ",f%02zuc%02zu", f, k);
            out << name;
        }
    }
    out << '\n';
    char buf[40];
    for (std::size_t r = 0; r < ds.size(); ++r) {
        out << (ds.labels[r] > 0 ? "+1" : "-1");
        for (const double v : ds.features.row(r)) {
            std::snprintf(buf, sizeof buf, ",%.12g", v);
            out << buf;
        }
        out << '\n';
    }
}

void write_features_csv(const std::filesystem::path& path, const FeatureConfig& config,
                        const LabeledDataset& ds) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Format, "cannot write " + path.string());
    write_features_csv(out, config, ds);
}

int parse_label(const std::string& text) {
    std::string t = text;
    while (!t.empty() && (t.back() == '\r' || t.back() == ' ')) t.pop_back();
    if (t == "1" || t == "+1" || t == "asphyxia") return 1;
    if (t == "-1" || t == "normal") return -1;
    throw Error(ErrorKind::InvalidLabels, "unrecognized label '" + t + "'");
}

FeatureTable read_features_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) parse_error("empty features file");
    FeatureTable table;
    table.config = parse_feature_config_line(line);
    if (!std::getline(in, line) || line.rfind("label", 0) != 0) parse_error("missing column header row");

    const std::size_t dim = table.config.dimension();
    table.data.features = Matrix(0, dim);
    std::vector<double> row(dim);
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_commas(line);
        const std::string where = "line " + std::to_string(line_no);
        if (fields.size() != dim + 1) {
            throw Error(ErrorKind::Configuration, where + " has " + std::to_string(fields.size() - 1) +
                                                      " features, header declares " + std::to_string(dim));
        }
        for (std::size_t c = 0; c < dim; ++c) row[c] = parse_double(fields[c + 1], where);
        table.data.features.append_row(row);
        table.data.labels.push_back(parse_label(std::string(fields[0])));
        table.data.ids.push_back("row:" + std::to_string(table.data.ids.size()));
    }
    return table;
}

FeatureTable read_features_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Format, "cannot open " + path.string());
    return read_features_csv(in);
}

// ---- model file ------------------------------------------------------------

std::string dataset_fingerprint(const LabeledDataset& ds) {
    std::uint64_t h = kFnvOffset;
    for (std::size_t r = 0; r < ds.size(); ++r) {
        h = fnv1a(h, &ds.labels[r], sizeof(int));
        for (const double v : ds.features.row(r)) h = fnv1a(h, &v, sizeof v);
    }
    return hex(h);
}

std::string ids_fingerprint(const LabeledDataset& ds) {
    std::uint64_t h = kFnvOffset;
    for (const auto& id : ds.ids) {
        h = fnv1a(h, id.data(), id.size());
        h = fnv1a(h, "\n", 1);
    }
    return hex(h);
}

std::string serialize_model(const ModelFile& file) {
    const SvmModel& m = file.model;
    json sv = json::array();
    for (std::size_t r = 0; r < m.support_vectors.rows(); ++r) {
        const auto row = m.support_vectors.row(r);
        sv.push_back(std::vector<double>(row.begin(), row.end()));
    }
    json j;
    j["format"] = kModelMagic;
    j["format_version"] = kModelFormatVersion;
    j["feature_config"] = config_to_json(file.features);
    j["feature_fingerprint"] = feature_fingerprint(file.features);
    if (m.scaling) {
        j["scaling"] = {{"mean", m.scaling->mean}, {"std", m.scaling->std}};
    } else {
        j["scaling"] = nullptr;
    }
    j["kernel"] = {{"family", std::string(to_string(m.kernel.family))},
                   {"gamma", m.kernel.gamma},
                   {"degree", m.kernel.degree},
                   {"coef0", m.kernel.coef0}};
    j["train_config"] = {{"C", m.train.C}, {"tol", m.train.tol}, {"max_iter", m.train.max_iter},
                         {"seed", m.train.seed}};
    j["dimension"] = m.dimension();
    j["support_vectors"] = std::move(sv);
    j["dual_coeffs"] = m.dual_coeffs;
    j["bias"] = m.bias;
    j["converged"] = m.converged;
    j["iterations"] = m.iterations;
    json prov = {{"seed", file.provenance.seed},
                 {"dataset_fingerprint", file.provenance.dataset_fingerprint},
                 {"train_rows", file.provenance.train_rows}};
    if (file.provenance.grid) {
        const auto& g = *file.provenance.grid;
        prov["grid_search"] = {{"family", std::string(to_string(g.family))},
                               {"cells", g.cells},
                               {"best", cell_to_json(g.best)}};
    } else {
        prov["grid_search"] = nullptr;
    }
    j["provenance"] = std::move(prov);
    return j.dump(1) + "\n";
}

ModelFile deserialize_model(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        parse_error(std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        if (!j.is_object() || j.value("format", std::string()) != kModelMagic) {
            parse_error("not a cryscreen model file");
        }
        const int version = j.at("format_version").get<int>();
        if (version != kModelFormatVersion) {
            throw Error(ErrorKind::VersionUnsupported,
                        "model format_version " + std::to_string(version) + " is not supported (expected " +
                            std::to_string(kModelFormatVersion) + ")");
        }
        ModelFile file;
        file.features = config_from_json(j.at("feature_config"));

        SvmModel& m = file.model;
        m.feature_fingerprint = feature_fingerprint(file.features);
        if (!j.at("scaling").is_null()) {
            m.scaling = ScalingParams{j["scaling"].at("mean").get<std::vector<double>>(),
                                      j["scaling"].at("std").get<double>()};
        }
        const auto& k = j.at("kernel");
        const auto family = parse_kernel_family(k.at("family").get<std::string>());
        if (!family) parse_error("unknown kernel family");
        m.kernel = {*family, k.at("gamma").get<double>(), k.at("degree").get<int>(),
                    k.at("coef0").get<double>()};
        const auto& t = j.at("train_config");
        m.train = {t.at("C").get<double>(), t.at("tol").get<double>(),
                   t.at("max_iter").get<std::size_t>(), t.at("seed").get<std::uint64_t>()};

        const std::size_t dim = j.at("dimension").get<std::size_t>();
        m.support_vectors = Matrix(0, dim);
        for (const auto& row : j.at("support_vectors")) {
            const auto values = row.get<std::vector<double>>();
            if (values.size() != dim) parse_error("support vector width disagrees with dimension");
            m.support_vectors.append_row(values);
        }
        m.dual_coeffs = j.at("dual_coeffs").get<std::vector<double>>();
        if (m.dual_coeffs.size() != m.support_vectors.rows()) {
            parse_error("dual coefficient count disagrees with support vector count");
        }
        if (m.scaling && m.scaling->mean.size() != dim) parse_error("scaling width disagrees with dimension");
        m.bias = j.at("bias").get<double>();
        m.converged = j.at("converged").get<bool>();
        m.iterations = j.at("iterations").get<std::size_t>();
        m.kernel.validate();

        const auto& p = j.at("provenance");
        file.provenance.seed = p.at("seed").get<std::uint64_t>();
        file.provenance.dataset_fingerprint = p.at("dataset_fingerprint").get<std::string>();
        file.provenance.train_rows = p.at("train_rows").get<std::size_t>();
        if (!p.at("grid_search").is_null()) {
            const auto& g = p["grid_search"];
            GridSummary s;
            const auto gf = parse_kernel_family(g.at("family").get<std::string>());
            if (!gf) parse_error("unknown grid kernel family");
            s.family = *gf;
            s.cells = g.at("cells").get<std::size_t>();
            s.best = cell_from_json(g.at("best"));
            file.provenance.grid = s;
        }
        return file;
    } catch (const json::exception& e) {
        parse_error(std::string("model file is incomplete: ") + e.what());
    }
}

void save_model(const ModelFile& file, const std::filesystem::path& path) {
    const std::string text = serialize_model(file);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Format, "cannot write " + path.string());
    out << text;
}

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Format, "cannot open model " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_model(buf.str());
}

// ---- grid report -------------------------------------------------------------

void write_grid_report(std::ostream& out, const GridSearchResult& result, const GridReportContext& ctx) {
    const bool poly = result.family == KernelFamily::Polynomial;
    out << "# cryscreen-grid v1 kernel=" << to_string(result.family) << " seed=" << ctx.seed
        << " train=" << ctx.train << " cv=" << ctx.cv << " test=" << ctx.test
        << " test_ids=" << ctx.test_ids_fingerprint;
    if (poly) out << " cost=" << shortest(result.poly_cost) << " coef0=0";
    out << '\n';
    out << "kind," << (poly ? "degree" : "cost") << ",gamma,cv_error,converged\n";
    auto row = [&](const char* kind, const GridCell& c) {
        char buf[160];
        if (c.failed) {
            std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g,inf,0\n", kind, c.primary, c.gamma);
        } else {
            std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g,%.12g,%d\n", kind, c.primary, c.gamma, c.cv_error,
                          c.converged ? 1 : 0);
        }
        out << buf;
    };
    for (const auto& c : result.cells) row("cell", c);
    row("best", result.best);
}

void write_split_manifest(std::ostream& out, const DatasetSplit& split) {
    out << "id,label,split\n";
    auto part = [&](const LabeledDataset& ds, const char* name) {
        for (std::size_t r = 0; r < ds.size(); ++r) {
            out << ds.ids[r] << ',' << (ds.labels[r] > 0 ? "+1" : "-1") << ',' << name << '\n';
        }
    };
    part(split.train, "train");
    part(split.cv, "cv");
    part(split.test, "test");
}

}  // namespace cryscreen

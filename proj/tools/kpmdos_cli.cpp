// Copyright 2026 The kpmdos Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Links only the C interface of libkpmdos.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "kpmdos/kpmdos.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitConfig = 2,
    kExitDomain = 3,
    kExitResource = 4,
    kExitParse = 5,
    kExitIo = 6,
};

struct CliError {
    int code;
    std::string message;
};

int exit_code_for(kpmdos_status s) {
    switch (s) {
    case KPMDOS_OK:
        return kExitOk;
    case KPMDOS_ERR_INVALID_ARGUMENT:
        return kExitConfig;
    case KPMDOS_ERR_DOMAIN:
        return kExitDomain;
    case KPMDOS_ERR_RESOURCE:
        return kExitResource;
    case KPMDOS_ERR_PARSE:
        return kExitParse;
    case KPMDOS_ERR_IO:
        return kExitIo;
    case KPMDOS_ERR_INTERNAL:
        break;
    }
    return kExitInternal;
}

void check(kpmdos_status s, const std::string &context) {
    if (s != KPMDOS_OK) {
        throw CliError{exit_code_for(s), context + ": " + kpmdos_last_error()};
    }
}

// Owning wrappers for C handles and strings.
struct ModelDeleter {
    void operator()(kpmdos_model *p) const { kpmdos_model_destroy(p); }
};
struct MomentsDeleter {
    void operator()(kpmdos_moments *p) const { kpmdos_moments_destroy(p); }
};
struct DosDeleter {
    void operator()(kpmdos_dos *p) const { kpmdos_dos_destroy(p); }
};
using ModelPtr = std::unique_ptr<kpmdos_model, ModelDeleter>;
using MomentsPtr = std::unique_ptr<kpmdos_moments, MomentsDeleter>;
using DosPtr = std::unique_ptr<kpmdos_dos, DosDeleter>;

std::string take(char *s) {
    std::string out(s != nullptr ? s : "");
    kpmdos_free_string(s);
    return out;
}

// ---------------------------------------------------------------- config

struct Field {
    std::string section;
    std::string key;
    std::string value;
    std::string help;
};

std::string default_output_dir() {
    const char *env = std::getenv("KPMDOS_OUTPUT_DIR");
    return (env != nullptr && *env != '\0') ? env : "kpmdos_out";
}

std::vector<Field> default_fields() {
    return {
        {"model", "L", "12", "chain length (even)"},
        {"model", "jx", "1", "XX coupling"},
        {"model", "jy", "0.33333333333333331", "YY coupling"},
        {"model", "jz", "0.5", "uniform ZZ coupling"},
        {"model", "lambda", "0.5", "staggered ZZ coupling"},
        {"model", "epsilon", "0.01", "Chebyshev window margin"},
        {"randomizer", "scheme", "par", "par, seq or ric"},
        {"randomizer", "layers", "5", "random-circuit layers"},
        {"randomizer", "s", "1", "Par jump parameter"},
        {"randomizer", "R", "4", "random-state replicas"},
        {"randomizer", "seed", "1", "random-circuit seed"},
        {"estimator", "method", "ed",
         "ed, recursion, arccos, st, circuit-exact or circuit-shots"},
        {"estimator", "M", "25", "highest moment index"},
        {"estimator", "K", "0", "arc-cosine order"},
        {"estimator", "steps", "1", "product-formula steps"},
        {"estimator", "shots", "1000", "shots per circuit"},
        {"estimator", "shot_seed", "7", "shot-sampling seed"},
        {"kpm", "kernel", "jackson", "jackson or dirichlet"},
        {"kpm", "order", "25", "highest moment used in the reconstruction"},
        {"kpm", "grid", "512", "Chebyshev grid points"},
        {"kpm", "pad_zeros", "false", "treat moments past the file as zero"},
        {"input", "moments", "", "moment file (.csv or .json)"},
        {"input", "dos", "", "DOS file (.json)"},
        {"thermo", "beta_min", "0", "first inverse temperature"},
        {"thermo", "beta_max", "5", "last inverse temperature"},
        {"thermo", "beta_points", "51", "number of temperatures"},
        {"bench", "sizes", "10,12,14", "entropy-bench chain lengths"},
        {"bench", "states", "20", "random states per point"},
        {"bench", "max_layers", "20", "deepest entropy-bench circuit"},
        {"bench", "schemes", "par,seq,ric", "entropy-bench schemes"},
        {"bench", "trace_sizes", "6,8,10,12", "trace-bench chain lengths"},
        {"bench", "trials", "10", "trace-bench repetitions per size"},
        {"output", "directory", default_output_dir(),
         "output directory (default from KPMDOS_OUTPUT_DIR)"},
        {"output", "formats", "csv,json", "csv, json or both"},
    };
}

class Config {
  public:
    explicit Config(std::vector<Field> fields) : fields_(std::move(fields)) {}

    std::vector<Field> &fields() { return fields_; }

    Field *find(const std::string &section, const std::string &key) {
        for (auto &f : fields_) {
            if (f.section == section && f.key == key) {
                return &f;
            }
        }
        return nullptr;
    }

    const std::string &str(const std::string &key) const {
        for (const auto &f : fields_) {
            if (f.key == key) {
                return f.value;
            }
        }
        throw CliError{kExitInternal, "unknown config key " + key};
    }

    double num(const std::string &key) const {
        const std::string &v = str(key);
        try {
            std::size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos == v.size()) {
                return d;
            }
        } catch (const std::exception &) {
        }
        throw CliError{kExitConfig, key + ": expected a number, got '" + v + "'"};
    }

    std::uint64_t count(const std::string &key) const {
        const std::string &v = str(key);
        if (!v.empty() && v.find_first_not_of("0123456789") == std::string::npos) {
            try {
                return std::stoull(v);
            } catch (const std::exception &) {
            }
        }
        throw CliError{kExitConfig,
                       key + ": expected a non-negative integer, got '" + v + "'"};
    }

    bool flag(const std::string &key) const {
        const std::string &v = str(key);
        if (v == "true" || v == "1" || v == "yes") {
            return true;
        }
        if (v == "false" || v == "0" || v == "no") {
            return false;
        }
        throw CliError{kExitConfig, key + ": expected true or false"};
    }

    std::vector<std::string> list(const std::string &key) const {
        std::vector<std::string> out;
        std::stringstream ss(str(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) {
                out.push_back(item);
            }
        }
        return out;
    }

    std::vector<std::size_t> sizes(const std::string &key) const {
        std::vector<std::size_t> out;
        for (const auto &item : list(key)) {
            if (item.find_first_not_of("0123456789") != std::string::npos) {
                throw CliError{kExitConfig, key + ": bad size '" + item + "'"};
            }
            out.push_back(std::stoul(item));
        }
        if (out.empty()) {
            throw CliError{kExitConfig, key + ": empty list"};
        }
        return out;
    }

    /// Canonical INI text; parsing it back reproduces the same text.
    std::string to_ini() const {
        std::ostringstream os;
        std::string section;
        for (const auto &f : fields_) {
            if (f.section != section) {
                if (!section.empty()) {
                    os << '\n';
                }
                section = f.section;
                os << '[' << section << "]\n";
            }
            os << f.key << " = " << f.value << '\n';
        }
        return os.str();
    }

    void load_ini(const std::string &path) {
        boost::property_tree::ptree pt;
        try {
            boost::property_tree::read_ini(path, pt);
        } catch (const boost::property_tree::ini_parser_error &e) {
            const bool missing = !fs::exists(path);
            throw CliError{missing ? kExitIo : kExitConfig, e.what()};
        }
        for (const auto &[section, body] : pt) {
            if (body.empty() && !body.data().empty()) {
                throw CliError{kExitConfig, "config key '" + section +
                                                "' is outside any [section]"};
            }
            for (const auto &[key, value] : body) {
                Field *f = find(section, key);
                if (f == nullptr) {
                    throw CliError{kExitConfig, "unknown config entry [" + section +
                                                    "] " + key};
                }
                f->value = value.data();
            }
        }
    }

  private:
    std::vector<Field> fields_;
};

// ----------------------------------------------------------------- output

std::string sha256_hex(const std::string &bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                   nullptr) != 1) {
        throw CliError{kExitInternal, "SHA-256 failed"};
    }
    static const char *hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CliError{kExitIo, "cannot read " + path};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class OutputDir {
  public:
    OutputDir(const Config &cfg, std::string command)
        : dir_(cfg.str("directory")), command_(std::move(command)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) {
            throw CliError{kExitIo, "cannot create " + dir_.string() + ": " +
                                        ec.message()};
        }
        for (const auto &f : cfg.list("formats")) {
            if (f == "csv") {
                csv_ = true;
            } else if (f == "json") {
                json_ = true;
            } else {
                throw CliError{kExitConfig, "formats: unknown format '" + f + "'"};
            }
        }
        if (!csv_ && !json_) {
            throw CliError{kExitConfig, "formats: choose csv, json or both"};
        }
    }

    bool csv() const { return csv_; }
    bool json() const { return json_; }

    void write(const std::string &name, const std::string &bytes) {
        const fs::path p = dir_ / name;
        std::ofstream out(p, std::ios::binary);
        out << bytes;
        out.close();
        if (!out) {
            throw CliError{kExitIo, "cannot write " + p.string()};
        }
        files_.push_back({{"path", name},
                          {"bytes", bytes.size()},
                          {"sha256", sha256_hex(bytes)}});
        std::cout << p.string() << '\n';
    }

    /// Writes config.ini and manifest.json; call last.
    void finish(const Config &cfg, const ordered_json &seeds,
                const ordered_json &extra) {
        const std::string ini = cfg.to_ini();
        write("config.ini", ini);
        ordered_json m;
        m["tool"] = "kpmdos";
        m["version"] = kpmdos_version();
        m["command"] = command_;
        m["config"] = ini;
        m["seeds"] = seeds;
        m["results"] = extra;
        m["files"] = files_;
        const std::string text = m.dump(2) + "\n";
        const fs::path p = dir_ / "manifest.json";
        std::ofstream out(p, std::ios::binary);
        out << text;
        if (!out) {
            throw CliError{kExitIo, "cannot write " + p.string()};
        }
        std::cout << p.string() << '\n';
    }

  private:
    fs::path dir_;
    std::string command_;
    bool csv_ = false;
    bool json_ = false;
    ordered_json files_ = ordered_json::array();
};

// ------------------------------------------------------------- conversion

kpmdos_model_params model_params(const Config &cfg) {
    kpmdos_model_params p = kpmdos_model_defaults();
    p.L = cfg.count("L");
    p.jx = cfg.num("jx");
    p.jy = cfg.num("jy");
    p.jz = cfg.num("jz");
    p.lambda = cfg.num("lambda");
    p.epsilon = cfg.num("epsilon");
    return p;
}

kpmdos_scheme parse_scheme(const std::string &s) {
    if (s == "par") {
        return KPMDOS_SCHEME_PAR;
    }
    if (s == "seq") {
        return KPMDOS_SCHEME_SEQ;
    }
    if (s == "ric") {
        return KPMDOS_SCHEME_RIC;
    }
    throw CliError{kExitConfig, "scheme: expected par, seq or ric, got '" + s + "'"};
}

kpmdos_random_params random_params(const Config &cfg) {
    kpmdos_random_params p = kpmdos_moment_defaults().random;
    p.scheme = parse_scheme(cfg.str("scheme"));
    p.layers = cfg.count("layers");
    p.s = cfg.count("s");
    p.seed = cfg.count("seed");
    return p;
}

kpmdos_moment_params moment_params(const Config &cfg) {
    static const std::map<std::string, kpmdos_method> methods{
        {"ed", KPMDOS_METHOD_ED},
        {"recursion", KPMDOS_METHOD_RECURSION},
        {"arccos", KPMDOS_METHOD_ARCCOS},
        {"st", KPMDOS_METHOD_ST},
        {"circuit-exact", KPMDOS_METHOD_CIRCUIT_EXACT},
        {"circuit-shots", KPMDOS_METHOD_CIRCUIT_SHOTS},
    };
    kpmdos_moment_params p = kpmdos_moment_defaults();
    const auto it = methods.find(cfg.str("method"));
    if (it == methods.end()) {
        throw CliError{kExitConfig, "method: unknown method '" + cfg.str("method") + "'"};
    }
    p.method = it->second;
    p.M = cfg.count("M");
    p.K = cfg.count("K");
    p.steps = cfg.count("steps");
    p.R = cfg.count("R");
    p.shots = cfg.count("shots");
    p.shot_seed = cfg.count("shot_seed");
    p.random = random_params(cfg);
    return p;
}

ordered_json seeds_of(const Config &cfg) {
    return {{"seed", cfg.count("seed")}, {"shot_seed", cfg.count("shot_seed")}};
}

ModelPtr make_model(const Config &cfg) {
    const auto p = model_params(cfg);
    kpmdos_model *m = nullptr;
    check(kpmdos_model_create(&p, &m), "model");
    return ModelPtr(m);
}

bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// --------------------------------------------------------------- commands

void write_cost(OutputDir &out, const kpmdos_model *model,
                const kpmdos_moment_params &mp) {
    char *s = nullptr;
    check(kpmdos_cost_json(model, &mp, &s), "cost");
    out.write("cost.json", take(s));
}

void cmd_moments(const Config &cfg) {
    const auto mp = moment_params(cfg);
    OutputDir out(cfg, "moments");
    const ModelPtr model = make_model(cfg);
    kpmdos_moments *raw = nullptr;
    check(kpmdos_moments_compute(model.get(), &mp, &raw), "moments");
    const MomentsPtr m(raw);
    char *s = nullptr;
    if (out.csv()) {
        check(kpmdos_moments_serialize(m.get(), KPMDOS_FORMAT_CSV, &s), "moments");
        out.write("moments.csv", take(s));
    }
    if (out.json()) {
        check(kpmdos_moments_serialize(m.get(), KPMDOS_FORMAT_JSON, &s), "moments");
        out.write("moments.json", take(s));
    }
    write_cost(out, model.get(), mp);
    kpmdos_rescale r{};
    check(kpmdos_model_rescale(model.get(), &r), "model");
    out.finish(cfg, seeds_of(cfg),
               {{"rescale", {{"a", r.a}, {"b", r.b}, {"epsilon", r.epsilon},
                             {"beta_id", r.beta_id}}}});
}

MomentsPtr load_moments(const std::string &path) {
    if (path.empty()) {
        throw CliError{kExitConfig, "moments: no input file given (--moments)"};
    }
    const std::string text = read_file(path);
    const kpmdos_format fmt =
        ends_with(path, ".json") ? KPMDOS_FORMAT_JSON : KPMDOS_FORMAT_CSV;
    kpmdos_moments *raw = nullptr;
    check(kpmdos_moments_parse(text.c_str(), fmt, &raw), path);
    return MomentsPtr(raw);
}

void cmd_reconstruct(const Config &cfg) {
    const std::string kernel_name = cfg.str("kernel");
    kpmdos_kernel kernel = KPMDOS_KERNEL_JACKSON;
    if (kernel_name == "dirichlet" || kernel_name == "none") {
        kernel = KPMDOS_KERNEL_DIRICHLET;
    } else if (kernel_name != "jackson") {
        throw CliError{kExitConfig, "kernel: expected jackson or dirichlet"};
    }
    const std::size_t order = cfg.count("order");
    const std::size_t grid = cfg.count("grid");
    OutputDir out(cfg, "reconstruct");
    const MomentsPtr all = load_moments(cfg.str("moments"));
    std::size_t available = 0;
    check(kpmdos_moments_count(all.get(), &available), "moments");
    if (order + 1 > available && !cfg.flag("pad_zeros")) {
        throw CliError{kExitDomain,
                       "order " + std::to_string(order) + " needs " +
                           std::to_string(order + 1) + " moments but the file has " +
                           std::to_string(available) + " (set pad_zeros = true)"};
    }
    kpmdos_moments *raw = nullptr;
    check(kpmdos_moments_truncate(all.get(), order, &raw), "moments");
    const MomentsPtr used(raw);
    kpmdos_dos *d = nullptr;
    check(kpmdos_reconstruct(used.get(), kernel, order, grid, &d), "reconstruct");
    const DosPtr dos(d);
    char *s = nullptr;
    if (out.csv()) {
        check(kpmdos_dos_serialize(dos.get(), KPMDOS_FORMAT_CSV, &s), "dos");
        out.write("dos.csv", take(s));
    }
    // The JSON form is the input of the thermo stage, so it is always written.
    check(kpmdos_dos_serialize(dos.get(), KPMDOS_FORMAT_JSON, &s), "dos");
    out.write("dos.json", take(s));
    const std::size_t measured = std::min(available, order + 1);
    out.finish(cfg, ordered_json::object(),
               {{"moments_available", available},
                {"moments_used", order + 1},
                {"moments_measured", measured},
                {"zero_padded", order + 1 - measured},
                {"input_sha256", sha256_hex(read_file(cfg.str("moments")))}});
}

std::vector<double> beta_grid(const Config &cfg) {
    const double lo = cfg.num("beta_min");
    const double hi = cfg.num("beta_max");
    const std::size_t n = cfg.count("beta_points");
    if (n == 0 || (n == 1 && lo != hi) || hi < lo) {
        throw CliError{kExitConfig, "beta range: need beta_min <= beta_max and "
                                    "beta_points >= 2 (or 1 with equal ends)"};
    }
    std::vector<double> out(n, lo);
    for (std::size_t k = 1; k < n; ++k) {
        out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return out;
}

void cmd_thermo(const Config &cfg) {
    const auto betas = beta_grid(cfg);
    const std::string path = cfg.str("dos");
    if (path.empty()) {
        throw CliError{kExitConfig, "thermo: no input file given (--dos)"};
    }
    OutputDir out(cfg, "thermo");
    const std::string text = read_file(path);
    kpmdos_dos *d = nullptr;
    check(kpmdos_dos_parse(text.c_str(), &d), path);
    const DosPtr dos(d);
    ordered_json results;
    for (const auto &[units, name] :
         {std::pair{KPMDOS_UNITS_RESCALED, "rescaled"},
          std::pair{KPMDOS_UNITS_PHYSICAL, "physical"}}) {
        char *s = nullptr;
        int monotone = 0;
        std::size_t clipped = 0;
        const kpmdos_status st = kpmdos_thermo_csv(dos.get(), betas.data(), betas.size(),
                                                   units, &s, &monotone, &clipped);
        if (st == KPMDOS_ERR_DOMAIN && units == KPMDOS_UNITS_PHYSICAL) {
            // Curves without rescale data have no physical energy axis.
            results[name] = {{"skipped", kpmdos_last_error()}};
            continue;
        }
        check(st, std::string("thermo (") + name + ")");
        out.write(std::string("thermo_") + name + ".csv", take(s));
        results[name] = {{"energy_monotone", monotone == 1},
                         {"clipped_points", clipped}};
    }
    results["input_sha256"] = sha256_hex(text);
    out.finish(cfg, ordered_json::object(), results);
}

void cmd_entropy_bench(const Config &cfg) {
    const auto sizes = cfg.sizes("sizes");
    const auto base = random_params(cfg);
    std::vector<kpmdos_scheme> schemes;
    for (const auto &s : cfg.list("schemes")) {
        schemes.push_back(parse_scheme(s));
    }
    const std::size_t states = cfg.count("states");
    const std::size_t max_layers = cfg.count("max_layers");
    OutputDir out(cfg, "entropy-bench");
    for (std::size_t L : sizes) {
        for (std::size_t k = 0; k < schemes.size(); ++k) {
            kpmdos_random_params rp = base;
            rp.scheme = schemes[k];
            char *s = nullptr;
            check(kpmdos_entropy_bench_csv(L, &rp, states, max_layers, &s),
                  "entropy-bench");
            out.write("entropy_" + cfg.list("schemes")[k] + "_L" + std::to_string(L) +
                          ".csv",
                      take(s));
        }
    }
    out.finish(cfg, seeds_of(cfg), ordered_json::object());
}

void cmd_trace_bench(const Config &cfg) {
    const auto sizes = cfg.sizes("trace_sizes");
    const auto couplings = model_params(cfg);
    const auto rp = random_params(cfg);
    const std::size_t R = cfg.count("R");
    const std::size_t trials = cfg.count("trials");
    OutputDir out(cfg, "trace-bench");
    char *s = nullptr;
    double slope = 0.0;
    check(kpmdos_trace_bench_csv(sizes.data(), sizes.size(), &couplings, &rp, R, trials,
                                 &s, &slope),
          "trace-bench");
    out.write("trace.csv", take(s));
    out.finish(cfg, seeds_of(cfg),
               {{"log2_slope", slope}, {"expected_slope", -0.5}});
}

void cmd_cost(const Config &cfg) {
    const auto mp = moment_params(cfg);
    OutputDir out(cfg, "cost");
    const ModelPtr model = make_model(cfg);
    write_cost(out, model.get(), mp);
    out.finish(cfg, seeds_of(cfg), ordered_json::object());
}

} // namespace

int main(int argc, char **argv) {
    Config cfg(default_fields());
    CLI::App app{"Chebyshev-moment density of states: moments, reconstruction, "
                 "thermodynamics and benchmarks."};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kpmdos_version()));

    std::string config_path;
    std::size_t threads = 0;
    app.add_option("--config", config_path, "INI file with [section] key = value");
    app.add_option("--threads", threads, "worker threads (0 = all cores)");

    std::map<std::string, std::pair<std::string, CLI::Option *>> overrides;
    for (auto &f : cfg.fields()) {
        auto &slot = overrides[f.key];
        slot.second = app.add_option("--" + f.key, slot.first,
                                     f.help + " [" + f.section + "] default: " +
                                         (f.value.empty() ? "(none)" : f.value))
                          ->group(f.section)
                          ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }

    const std::vector<std::pair<std::string, std::string>> commands{
        {"moments", "estimate Chebyshev moments with the chosen method"},
        {"reconstruct", "KPM density of states from a moment file"},
        {"thermo", "partition function, free energy, energy and entropy"},
        {"entropy-bench", "half-chain entropy of random states versus depth"},
        {"trace-bench", "stochastic-trace error versus chain length"},
        {"cost", "HQC cost of the moment circuits"},
    };
    for (const auto &[name, help] : commands) {
        app.add_subcommand(name, help)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (!config_path.empty()) {
            cfg.load_ini(config_path);
        }
        for (auto &f : cfg.fields()) {
            const auto &[value, opt] = overrides[f.key];
            if (opt->count() > 0) {
                f.value = value;
            }
        }
        check(kpmdos_set_threads(threads), "threads");
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "moments") {
            cmd_moments(cfg);
        } else if (cmd == "reconstruct") {
            cmd_reconstruct(cfg);
        } else if (cmd == "thermo") {
            cmd_thermo(cfg);
        } else if (cmd == "entropy-bench") {
            cmd_entropy_bench(cfg);
        } else if (cmd == "trace-bench") {
            cmd_trace_bench(cfg);
        } else {
            cmd_cost(cfg);
        }
    } catch (const CliError &e) {
        std::cerr << "kpmdos: " << e.message << '\n';
        return e.code;
    } catch (const std::exception &e) {
        std::cerr << "kpmdos: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}

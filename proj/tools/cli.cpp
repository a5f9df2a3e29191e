/*
 * Copyright 2026 The lbaug Authors. All rights reserved.
 * This file is licensed to you under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software distributed under
 * the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR REPRESENTATIONS
 * OF ANY KIND, either express or implied. See the License for the specific language
 * governing permissions and limitations under the License.
 */
#include "cli.h"

#include <lbaug/lbaug.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace lbaug::cli {

namespace {

using Clock = std::chrono::steady_clock;
using Json = nlohmann::ordered_json;

/// Bad command-line or configuration input; maps to exit code 2.
class UsageError : public Error
{
public:
    using Error::Error;
};

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

TriMesh<double> load_mesh_arg(const std::string& spec)
{
    if (spec.rfind("synth:", 0) == 0) return make_synthetic<double>(spec.substr(6));
    return load_mesh<double>(spec);
}

LBOperator<double> operator_with_radius(const TriMesh<double>& mesh, double tol = 1e-10)
{
    auto op = assemble(mesh);
    spectral_radius(op, tol);
    return op;
}

void write_json(const Json& j, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string trim(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r");
    return std::string(text.substr(first, last - first + 1));
}

/// "0:200,1:100" -> {0: 200, 1: 100}.
std::map<int, Index> parse_counts(const std::string& text)
{
    std::map<int, Index> counts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("--counts entries must look like label:count, got '" + item + "'");
        try {
            std::size_t used = 0;
            const int label = std::stoi(item.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument(item);
            const std::string count_text = item.substr(colon + 1);
            const long long count = std::stoll(count_text, &used);
            if (used != count_text.size() || count < 1) throw std::invalid_argument(item);
            counts[label] = static_cast<Index>(count);
        } catch (const std::logic_error&) {
            throw UsageError("--counts entries must look like label:count with count >= 1, got '" + item + "'");
        }
    }
    if (counts.empty()) throw UsageError("--counts is empty");
    return counts;
}

///
/// Reads `key = value` lines ('#' starts a comment). Keys are long option names of the selected
/// subcommand. The pairs are appended after the command-line arguments so they take precedence.
///
std::vector<std::string> config_arguments(const std::filesystem::path& path, const CLI::App& command)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path.string() + "'");
    std::vector<std::string> extra;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path.string() + ":" + std::to_string(number) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const CLI::Option* option = command.get_option_no_throw("--" + key);
        if (option == nullptr || key == "config") {
            throw UsageError(
                path.string() + ":" + std::to_string(number) + ": unknown key '" + key + "' for command '" +
                command.get_name() + "'");
        }
        if (option->get_expected_min() == 0) {
            if (value == "true" || value == "1") {
                extra.push_back("--" + key);
            } else if (value != "false" && value != "0") {
                throw UsageError(path.string() + ":" + std::to_string(number) + ": '" + key + "' expects true or false");
            }
            continue;
        }
        extra.push_back("--" + key);
        extra.push_back(value);
    }
    return extra;
}

std::optional<std::string> find_config(const std::vector<std::string>& args)
{
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
            return args[i + 1];
        }
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return std::nullopt;
}

Json class_report(const SignalSet<double>& real, const SignalSet<double>& augmented)
{
    Json classes = Json::array();
    const auto deviation = class_mean_deviation(real, augmented);
    for (const int label : class_labels(augmented)) {
        Json entry;
        entry["label"] = label;
        entry["real"] = select_class(real, label).size();
        entry["augmented"] = select_class(augmented, label).size();
        entry["max_mean_deviation"] = deviation.at(label);
        classes.push_back(entry);
    }
    return classes;
}

struct Settings
{
    int threads = 0;
    std::string config;

    std::string mesh = "synth:icosphere:3";
    std::string out;
    double tol = 1e-10;

    Index count = 0;
    Index dense_threshold = 2000;

    double lambda_max = 0;
    double headroom = default_headroom;
    std::string design = "dyadic";
    double width = 0;
    int levels = 5;
    Index order = 5000;
    bool no_mean = false;
    std::string damping = "none";

    Index n = 2000;
    Index m = 1000;
    double sigma = 0.6;
    Index center = 0;
    int hops = 2;
    double signal = 1;
    std::uint64_t seed = 0;

    std::string input;
    std::string method;
    std::string counts;
    std::string basis;
    std::string bank;
    std::string report;

    std::string real;
    std::string augmented;

    std::vector<Index> orders = {500, 1000, 2000, 4000};
    std::vector<Index> sizes = {500, 1000, 2000};
    Index signals = 16;
    int trials = 3;
};

FilterBank<double> build_bank(const Settings& s, double scale)
{
    const bool mean = !s.no_mean;
    FilterBank<double> bank;
    if (s.design == "dyadic") {
        bank = design_dyadic(scale, s.levels, s.order, mean);
    } else {
        if (!(s.width > 0)) throw UsageError("--design uniform needs --width > 0");
        bank = design_uniform(scale, s.width, s.order, mean);
    }
    if (s.damping == "jackson") bank = make_bank(bank.bands, scale, s.order, mean, bank.design, Damping::jackson);
    return bank;
}

int cmd_laplacian(const Settings& s, std::ostream& out)
{
    const auto mesh = load_mesh_arg(s.mesh);
    const auto op = operator_with_radius(mesh, s.tol);
    Json summary;
    summary["vertices"] = mesh.num_vertices();
    summary["triangles"] = mesh.num_triangles();
    summary["lambda_max"] = *op.lambda_max;
    summary["total_area"] = total_area(op);
    summary["nonzeros"] = op.stiffness.nonZeros();
    if (!s.out.empty()) {
        export_operator(op, s.out);
        write_json(summary, s.out + ".summary.json");
    }
    out << summary.dump(2) << '\n';
    return success;
}

int cmd_eigens(const Settings& s, std::ostream& out)
{
    const auto mesh = load_mesh_arg(s.mesh);
    const auto op = assemble(mesh);
    EigenOptions options;
    options.dense_threshold = s.dense_threshold;
    const Index count = s.count == 0 ? op.num_vertices() : s.count;
    const auto start = Clock::now();
    const auto basis = eigendecompose(op, count, options);
    const double elapsed = seconds_since(start);
    save_basis(basis, s.out);
    Json summary;
    summary["vertices"] = op.num_vertices();
    summary["count"] = basis.size();
    std::vector<double> head(basis.eigenvalues.data(), basis.eigenvalues.data() + std::min<Index>(10, basis.size()));
    summary["first_eigenvalues"] = head;
    summary["largest_eigenvalue"] = basis.eigenvalues(basis.size() - 1);
    summary["seconds"] = elapsed;
    out << summary.dump(2) << '\n';
    return success;
}

int cmd_bank(const Settings& s, std::ostream& out)
{
    double scale = s.lambda_max;
    if (scale <= 0) {
        const auto op = operator_with_radius(load_mesh_arg(s.mesh));
        scale = *op.lambda_max * s.headroom;
    }
    const auto bank = build_bank(s, scale);
    save_bank(bank, s.out);
    Json summary;
    summary["design"] = bank.design;
    summary["lambda_max"] = bank.lambda_max;
    summary["K"] = bank.order;
    summary["bands"] = bank.num_bands();
    summary["channels"] = bank.num_channels();
    out << summary.dump(2) << '\n';
    return success;
}

int cmd_simulate(const Settings& s, std::ostream& out)
{
    const auto mesh = load_mesh_arg(s.mesh);
    SimulationConfig cfg;
    cfg.n = s.n;
    cfg.m = s.m;
    cfg.sigma = s.sigma;
    cfg.patch = select_patch(mesh, s.center, s.hops);
    cfg.signal_level = s.signal;
    cfg.seed = s.seed;
    const auto signals = generate(mesh, cfg);
    save_signals(signals, s.out);
    Json summary;
    summary["vertices"] = mesh.num_vertices();
    summary["group0"] = cfg.n;
    summary["group1"] = cfg.m;
    summary["patch"] = cfg.patch;
    summary["seed"] = cfg.seed;
    out << summary.dump(2) << '\n';
    return success;
}

int cmd_augment(const Settings& s, std::ostream& out)
{
    Json timings;
    auto start = Clock::now();
    const auto mesh = load_mesh_arg(s.mesh);
    const auto real = load_signals<double>(s.input);
    timings["load"] = seconds_since(start);
    if (real.num_vertices() != mesh.num_vertices()) {
        throw DimensionError(
            "signals have " + std::to_string(real.num_vertices()) + " vertices, mesh has " +
            std::to_string(mesh.num_vertices()));
    }

    std::map<int, Index> counts;
    if (s.counts.empty()) {
        for (const int label : class_labels(real)) counts[label] = select_class(real, label).size();
    } else {
        counts = parse_counts(s.counts);
    }

    Json report;
    report["method"] = s.method;
    report["seed"] = s.seed;
    report["vertices"] = mesh.num_vertices();

    SignalSet<double> augmented;
    if (s.method == "lb-eigda") {
        start = Clock::now();
        EigenBasis<double> basis;
        if (!s.basis.empty()) {
            basis = load_basis<double>(s.basis);
            if (basis.num_vertices() != mesh.num_vertices()) {
                throw DimensionError("eigenbasis file does not match the mesh vertex count");
            }
        } else {
            EigenOptions options;
            options.dense_threshold = s.dense_threshold;
            basis = eigendecompose(assemble(mesh), s.count == 0 ? mesh.num_vertices() : s.count, options);
        }
        timings["eigendecompose"] = seconds_since(start);
        report["basis_size"] = basis.size();
        start = Clock::now();
        augmented = augment_dataset<double>(real, LbEigMethod<double>{basis}, counts, s.seed);
        timings["augment"] = seconds_since(start);
        report["classes"] = class_report(real, augmented);
    } else {
        start = Clock::now();
        const auto op = operator_with_radius(mesh);
        const auto norm = normalize(op, s.headroom);
        timings["operator"] = seconds_since(start);
        start = Clock::now();
        const auto bank = s.bank.empty() ? build_bank(s, norm.scale()) : load_bank<double>(s.bank);
        timings["bank"] = seconds_since(start);
        report["design"] = bank.design;
        report["bands"] = bank.num_bands();
        report["channels"] = bank.num_channels();
        report["K"] = bank.order;
        report["lambda_max"] = bank.lambda_max;
        start = Clock::now();
        augmented = augment_dataset<double>(real, ChebyshevMethod<double>{norm, bank}, counts, s.seed);
        timings["augment"] = seconds_since(start);

        Json classes = class_report(real, augmented);
        for (auto& entry : classes) {
            const int label = entry["label"].get<int>();
            const MatrixX<double> recon = bank_reconstruction(norm, bank, select_class(real, label).data);
            const Eigen::RowVectorXd diff =
                select_class(augmented, label).data.colwise().mean() - recon.colwise().mean();
            entry["max_mean_deviation_vs_reconstruction"] = diff.cwiseAbs().maxCoeff();
        }
        report["classes"] = classes;
    }

    start = Clock::now();
    save_signals(augmented, s.out);
    timings["write"] = seconds_since(start);
    report["output"] = s.out;
    report["timings_seconds"] = timings;
    write_json(report, s.report.empty() ? s.out + ".report.json" : s.report);
    out << report.dump(2) << '\n';
    return success;
}

std::string csv_value(const std::optional<double>& value)
{
    if (!value) return "null";
    std::ostringstream text;
    text.precision(17);
    text << *value;
    return text.str();
}

int cmd_stats(const Settings& s, std::ostream& out, std::ostream& err)
{
    const auto real = load_signals<double>(s.real);
    const auto augmented = load_signals<double>(s.augmented);
    const auto stats = compute_stats(real, augmented);
    {
        std::ofstream csv(s.out + ".sorted_means.csv");
        if (!csv) throw Error("cannot open '" + s.out + ".sorted_means.csv' for writing");
        csv.precision(17);
        csv << "rank,vertex,real_mean,augmented_mean\n";
        for (std::size_t r = 0; r < stats.order.size(); ++r) {
            const Index v = stats.order[r];
            csv << r << ',' << v << ',' << stats.real_mean(v) << ',' << stats.augmented_mean(v) << '\n';
        }
    }
    Index undefined = 0;
    {
        std::ofstream csv(s.out + ".correlations.csv");
        if (!csv) throw Error("cannot open '" + s.out + ".correlations.csv' for writing");
        csv << "set,index,label,correlation\n";
        for (std::size_t i = 0; i < stats.real_correlation.size(); ++i) {
            csv << "real," << i << ',' << real.labels[i] << ',' << csv_value(stats.real_correlation[i]) << '\n';
            undefined += stats.real_correlation[i] ? 0 : 1;
        }
        for (std::size_t i = 0; i < stats.augmented_correlation.size(); ++i) {
            csv << "augmented," << i << ',' << augmented.labels[i] << ','
                << csv_value(stats.augmented_correlation[i]) << '\n';
            undefined += stats.augmented_correlation[i] ? 0 : 1;
        }
    }
    if (undefined > 0) {
        err << "warning: " << undefined << " constant signal(s) have undefined correlation (reported as null)\n";
    }
    auto summarize = [](const std::vector<std::optional<double>>& values) {
        double sum = 0, sum2 = 0;
        Index count = 0;
        for (const auto& v : values) {
            if (!v) continue;
            sum += *v;
            sum2 += *v * *v;
            ++count;
        }
        Json j;
        j["count"] = count;
        j["mean"] = count ? Json(sum / double(count)) : Json(nullptr);
        j["sd"] = count > 1 ? Json(std::sqrt(std::max(0.0, (sum2 - sum * sum / double(count)) / double(count - 1))))
                            : Json(nullptr);
        return j;
    };
    Json summary;
    summary["max_mean_deviation"] = stats.max_mean_deviation;
    Json per_class = Json::object();
    for (const auto& [label, dev] : class_mean_deviation(real, augmented)) per_class[std::to_string(label)] = dev;
    summary["class_max_mean_deviation"] = per_class;
    summary["real_correlation"] = summarize(stats.real_correlation);
    summary["augmented_correlation"] = summarize(stats.augmented_correlation);
    summary["undefined_correlations"] = undefined;
    write_json(summary, s.out + ".summary.json");
    out << summary.dump(2) << '\n';
    return success;
}

double median(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

int cmd_bench(const Settings& s, std::ostream& out, std::ostream& err)
{
    const auto mesh = load_mesh_arg(s.mesh);
    const auto op = operator_with_radius(mesh);
    const auto norm = normalize(op);
    SimulationConfig cfg;
    cfg.n = s.signals;
    cfg.m = 1;
    cfg.sigma = 1;
    cfg.patch = {0};
    cfg.seed = 1;
    const auto real = select_class(generate(mesh, cfg), 0);

    std::ostringstream csv;
    csv << "method,parameter,trials,median_seconds,min_seconds,max_seconds\n";
    auto row = [&](const char* method, Index parameter, const std::vector<double>& times) {
        csv << method << ',' << parameter << ',' << times.size() << ',' << median(times) << ','
            << *std::min_element(times.begin(), times.end()) << ','
            << *std::max_element(times.begin(), times.end()) << '\n';
    };

    std::vector<double> cpda_median, eig_median;
    for (const Index order : s.orders) {
        std::vector<double> times;
        for (int t = 0; t < s.trials; ++t) {
            const auto start = Clock::now();
            const auto bank = design_dyadic(norm.scale(), s.levels, order);
            const auto plan = make_plan(real.size(), bank.num_channels(), derive_seed(s.seed, order, t));
            c_pda(norm, bank, real, plan);
            times.push_back(seconds_since(start));
        }
        row("c-pda", order, times);
        cpda_median.push_back(median(times));
        err << "c-pda K=" << order << " median " << cpda_median.back() << " s\n";
    }
    for (const Index count : s.sizes) {
        if (count > mesh.num_vertices()) throw UsageError("eigenbasis size exceeds the vertex count");
        std::vector<double> times;
        for (int t = 0; t < s.trials; ++t) {
            const auto start = Clock::now();
            const auto basis = eigendecompose(op, count);
            const auto plan = make_plan(real.size(), basis.size(), derive_seed(s.seed, count, t));
            lb_eig_da(basis, real, plan);
            times.push_back(seconds_since(start));
        }
        row("lb-eigda", count, times);
        eig_median.push_back(median(times));
        err << "lb-eigda J=" << count << " median " << eig_median.back() << " s\n";
    }

    if (s.out.empty()) {
        out << csv.str();
    } else {
        std::ofstream file(s.out);
        if (!file) throw Error("cannot open '" + s.out + "' for writing");
        file << csv.str();
        out << "wrote " << s.out << '\n';
    }
    if (!cpda_median.empty() && !eig_median.empty()) {
        err << "ratio lb-eigda(J=" << s.sizes.back() << ") / c-pda(K=" << s.orders.back()
            << ") = " << eig_median.back() / cpda_median.back() << '\n';
    }
    return success;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Settings s;
    CLI::App app{"Augment scalar signals on triangle meshes by spectral permutation.", "lbaug"};
    app.option_defaults()->take_last();
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", s.threads, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--config", s.config, "key = value file; its values override command-line flags");

    const std::string mesh_help = "Mesh file (.off/.ply) or synth:tetrahedron|synth:icosphere:<level>|synth:uvsphere:<res>";
    const std::vector<std::string> designs = {"uniform", "dyadic"};
    const std::vector<std::string> dampings = {"none", "jackson"};

    auto* laplacian = app.add_subcommand("laplacian", "Assemble the operator, report lambda_max, optionally export it");
    laplacian->add_option("--mesh", s.mesh, mesh_help)->required();
    laplacian->add_option("--out", s.out, "Export prefix: <out>.coo.txt, <out>.areas.csv, <out>.summary.json");
    laplacian->add_option("--tol", s.tol, "Relative tolerance of lambda_max")->capture_default_str();

    auto* eigens = app.add_subcommand("eigens", "Compute and store the leading eigenpairs");
    eigens->add_option("--mesh", s.mesh, mesh_help)->required();
    eigens->add_option("--count", s.count, "Number of eigenpairs J (0 = all)")->check(CLI::NonNegativeNumber);
    eigens->add_option("--dense-threshold", s.dense_threshold, "Largest V solved densely")->capture_default_str();
    eigens->add_option("--out", s.out, "Eigenbasis file")->required();

    auto* bank = app.add_subcommand("bank", "Design a Chebyshev filter bank");
    bank->add_option("--mesh", s.mesh, mesh_help + "; lambda_max is computed from it");
    bank->add_option("--lambda-max", s.lambda_max, "Spectral scale to design against (skips --mesh)")->check(CLI::PositiveNumber);
    bank->add_option("--headroom", s.headroom, "Factor applied to the mesh lambda_max")->capture_default_str();
    bank->add_option("--design", s.design, "Band layout")->check(CLI::IsMember(designs))->capture_default_str();
    bank->add_option("--width", s.width, "Band width for --design uniform")->check(CLI::PositiveNumber);
    bank->add_option("--levels", s.levels, "Levels for --design dyadic")->check(CLI::Range(1, 12))->capture_default_str();
    bank->add_option("--order", s.order, "Chebyshev order K")->check(CLI::PositiveNumber)->capture_default_str();
    bank->add_flag("--no-mean", s.no_mean, "Omit the exact mean channel");
    bank->add_option("--damping", s.damping, "Gibbs damping")->check(CLI::IsMember(dampings))->capture_default_str();
    bank->add_option("--out", s.out, "Bank JSON file")->required();

    auto* simulate = app.add_subcommand("simulate", "Generate the two-group patch experiment");
    simulate->add_option("--mesh", s.mesh, mesh_help)->capture_default_str();
    simulate->add_option("--n", s.n, "Group-0 count")->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--m", s.m, "Group-1 count")->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--sigma", s.sigma, "Noise standard deviation")->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--center", s.center, "Patch center vertex")->check(CLI::NonNegativeNumber)->capture_default_str();
    simulate->add_option("--hops", s.hops, "Patch radius in edges")->check(CLI::NonNegativeNumber)->capture_default_str();
    simulate->add_option("--signal", s.signal, "Value added on the patch for Group 1")->capture_default_str();
    simulate->add_option("--seed", s.seed, "RNG seed")->required();
    simulate->add_option("--out", s.out, "Signal file (.csv or .bin)")->required();

    auto* augment = app.add_subcommand("augment", "Augment each class of a signal set");
    augment->add_option("--mesh", s.mesh, mesh_help)->capture_default_str();
    augment->add_option("--input", s.input, "Real signals (.csv or .bin)")->required()->check(CLI::ExistingFile);
    augment->add_option("--method", s.method, "Augmentation method")
        ->required()
        ->check(CLI::IsMember(std::vector<std::string>{"lb-eigda", "c-pda"}));
    augment->add_option("--seed", s.seed, "RNG seed")->required();
    augment->add_option("--counts", s.counts, "Per-class output counts, e.g. 0:200,1:100 (default: class sizes)");
    augment->add_option("--count", s.count, "lb-eigda: eigenbasis size J (0 = all)")->check(CLI::NonNegativeNumber);
    augment->add_option("--dense-threshold", s.dense_threshold, "lb-eigda: largest V solved densely")->capture_default_str();
    augment->add_option("--basis", s.basis, "lb-eigda: precomputed eigenbasis file")->check(CLI::ExistingFile);
    augment->add_option("--bank", s.bank, "c-pda: bank JSON (default: designed from the options below)")->check(CLI::ExistingFile);
    augment->add_option("--headroom", s.headroom, "c-pda: factor applied to lambda_max")->capture_default_str();
    augment->add_option("--design", s.design, "c-pda: band layout")->check(CLI::IsMember(designs))->capture_default_str();
    augment->add_option("--width", s.width, "c-pda: band width for uniform design")->check(CLI::PositiveNumber);
    augment->add_option("--levels", s.levels, "c-pda: dyadic levels")->check(CLI::Range(1, 12))->capture_default_str();
    augment->add_option("--order", s.order, "c-pda: Chebyshev order K")->check(CLI::PositiveNumber)->capture_default_str();
    augment->add_flag("--no-mean", s.no_mean, "c-pda: omit the exact mean channel");
    augment->add_option("--damping", s.damping, "c-pda: Gibbs damping")->check(CLI::IsMember(dampings))->capture_default_str();
    augment->add_option("--out", s.out, "Augmented signal file (.csv or .bin)")->required();
    augment->add_option("--report", s.report, "Report JSON (default: <out>.report.json)");

    auto* stats = app.add_subcommand("stats", "Compare real and augmented signal sets");
    stats->add_option("--real", s.real, "Real signals")->required()->check(CLI::ExistingFile);
    stats->add_option("--augmented", s.augmented, "Augmented signals")->required()->check(CLI::ExistingFile);
    stats->add_option("--out", s.out, "Output prefix")->required();

    auto* bench = app.add_subcommand("bench", "Time C-pDA against K and LB-eigDA against J");
    bench->add_option("--mesh", s.mesh, mesh_help)->default_str("synth:uvsphere:50");
    bench->add_option("--orders", s.orders, "Chebyshev orders K")->delimiter(',')->check(CLI::PositiveNumber)->take_all();
    bench->add_option("--counts", s.sizes, "Eigenbasis sizes J")->delimiter(',')->check(CLI::PositiveNumber)->take_all();
    bench->add_option("--signals", s.signals, "Signals per run")->check(CLI::Range(Index(2), Index(1) << 30))->capture_default_str();
    bench->add_option("--trials", s.trials, "Repetitions per point")->check(CLI::PositiveNumber)->capture_default_str();
    bench->add_option("--levels", s.levels, "Dyadic levels of the C-pDA bank")->check(CLI::Range(1, 12))->capture_default_str();
    bench->add_option("--seed", s.seed, "Plan seed")->capture_default_str();
    bench->add_option("--out", s.out, "CSV file (default: stdout)");

    try {
        std::vector<std::string> full = args;
        if (const auto config = find_config(args)) {
            const CLI::App* command = nullptr;
            for (const auto& arg : args) {
                for (const auto* sub : {laplacian, eigens, bank, simulate, augment, stats, bench}) {
                    if (arg == sub->get_name()) command = sub;
                }
                if (command) break;
            }
            if (!command) throw UsageError("--config needs a subcommand");
            const auto extra = config_arguments(*config, *command);
            full.insert(full.end(), extra.begin(), extra.end());
        }
        if (std::find(args.begin(), args.end(), "bench") != args.end()) s.mesh = "synth:uvsphere:50";

        std::vector<std::string> storage = {"lbaug"};
        storage.insert(storage.end(), full.begin(), full.end());
        std::vector<const char*> argv;
        for (const auto& a : storage) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? success : usage_error;
        }

        set_thread_count(s.threads);
        if (*laplacian) return cmd_laplacian(s, out);
        if (*eigens) return cmd_eigens(s, out);
        if (*bank) {
            if (s.lambda_max <= 0 && bank->count("--mesh") == 0) {
                throw UsageError("bank needs --mesh or --lambda-max");
            }
            return cmd_bank(s, out);
        }
        if (*simulate) return cmd_simulate(s, out);
        if (*augment) return cmd_augment(s, out);
        if (*stats) return cmd_stats(s, out, err);
        if (*bench) return cmd_bench(s, out, err);
        return usage_error;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return computation_failure;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << '\n';
        return computation_failure;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return computation_failure;
    } catch (const DivergenceError& e) {
        err << "error: " << e.what() << '\n';
        return computation_failure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return computation_failure;
    }
}

} // namespace lbaug::cli

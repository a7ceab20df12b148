#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vinesense/io/commands.hpp"
#include "vinesense/reconstruction.hpp"

// Thin argument layer; all real work lives in vinesense::io commands so tests
// can drive them without spawning processes.

int main(int argc, char** argv) {
    CLI::App app{"Shape sensing for tip-everting vine robots from chains of drifting IMUs"};
    app.require_subcommand(1);
    app.fallthrough();  // lets --no-timestamp appear after the subcommand

    vinesense::io::CommandOptions opts;
    app.add_flag("--no-timestamp", opts.no_timestamp,
                 "Omit generated-at comments for byte-stable output");

    std::string log_csv, offsets_path, config_path, title, kind;
    std::string offsets_out = "offsets.csv", dir_out = "out", svg_out = "plot.svg";
    std::vector<std::string> plot_inputs;
    vinesense::RobotGeometry geometry;
    std::uint64_t seed = 0;

    CLI::App* offsets = app.add_subcommand(
        "offsets", "Compute neighbor mounting offsets from an orientation log");
    offsets->add_option("log", log_csv, "Orientation log CSV")->required();
    offsets->add_option("-o,--out", offsets_out, "Output offsets CSV")->capture_default_str();

    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "Reconstruct the centerline from a log and offsets");
    reconstruct->add_option("log", log_csv, "Orientation log CSV")->required();
    reconstruct->add_option("--offsets", offsets_path, "Mounting-offset CSV")->required();
    reconstruct->add_option("-o,--out", dir_out, "Output directory")->capture_default_str();
    reconstruct->add_option("--spacing", geometry.spacing_s_cm, "Sensor spacing s (cm)")->capture_default_str();
    reconstruct->add_option("--diameter", geometry.diameter_d_cm, "Robot diameter d (cm)")->capture_default_str();
    reconstruct->add_option("--imus", geometry.num_imus, "Sensor count")->capture_default_str();
    reconstruct->add_flag("--strict", opts.strict,
                          "Error out when a bend exceeds a segment instead of clamping");
    reconstruct->add_option("--arc-samples", opts.arc_samples,
                            "Polyline points per bent segment (0 = by angle)");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Run a synthetic experiment: drift, passive, active, length or spacing");
    sweep->add_option("kind", kind, "drift | passive | active | length | spacing")->required();
    sweep->add_option("-c,--config", config_path, "Run-configuration JSON");
    sweep->add_option("-o,--out", dir_out, "Output directory")->capture_default_str();
    CLI::Option* seed_opt =
        sweep->add_option("--seed", seed, "Master seed override (replaces the config's)");
    sweep->add_option("--arc-samples", opts.arc_samples,
                      "Polyline points per bent segment (0 = by angle)");

    CLI::App* plot = app.add_subcommand("plot", "Render records or centerline CSVs to SVG");
    plot->add_option("inputs", plot_inputs, "Records CSV, or one or two centerline CSVs")
        ->required();
    plot->add_option("-o,--out", svg_out, "Output SVG")->capture_default_str();
    plot->add_option("--title", title, "Plot title");

    CLI11_PARSE(app, argc, argv);

    if (seed_opt->count() > 0) {
        opts.has_seed = true;
        opts.seed = seed;
    }

    if (offsets->parsed()) {
        return vinesense::io::cmd_offsets(log_csv, offsets_out, opts, std::cout, std::cerr);
    }
    if (reconstruct->parsed()) {
        return vinesense::io::cmd_reconstruct(log_csv, offsets_path, dir_out, geometry, opts,
                                              std::cout, std::cerr);
    }
    if (sweep->parsed()) {
        return vinesense::io::cmd_sweep(kind, config_path, dir_out, opts, std::cout, std::cerr);
    }
    if (plot->parsed()) {
        return vinesense::io::cmd_plot(plot_inputs, svg_out, title, opts, std::cout, std::cerr);
    }
    return 1;
}

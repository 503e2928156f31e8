#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "syspredict/error.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kIoFailure = 3 };

int report(std::string_view category, const std::string& message, int code) {
  std::cerr << "error[" << category << "]: " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace syspredict;
  using namespace syspredict::cli;

  CLI::App app{"Predict coherent-system failure times from early component failures"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  Overrides overrides;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "Output file (stdout when omitted)");
  app.add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t s) { overrides.seed = s; }, "Random seed (overrides config)");

  using Runner = std::function<void(const RunConfig&, std::ostream&)>;
  const std::map<std::string, std::pair<std::string, Runner>> commands{
      {"curves", {"Median, mean and band curves over a grid", cmd_curves}},
      {"predict", {"Quantiles and bands at one conditioning point", cmd_predict}},
      {"simulate", {"Draw component and system lifetimes", cmd_simulate}},
      {"coverage", {"Plug-in coverage study of the estimated bands", cmd_coverage}},
      {"fitqr", {"Linear quantile / least-squares fits to a CSV sample", cmd_fitqr}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) subs[name] = app.add_subcommand(name, entry.first);
  subs["simulate"]->add_option_function<std::size_t>(
      "--size", [&](std::size_t s) { overrides.size = s; }, "Number of rows (overrides config)");
  subs["fitqr"]->add_option_function<std::string>(
      "--input", [&](const std::string& s) { overrides.input = s; }, "Sample CSV to fit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("Usage", e.what(), kUsage);
  }

  std::string name;
  for (const auto& [n, sub] : subs) {
    if (sub->parsed()) name = n;
  }

  try {
    RunConfig config = config_path.empty() ? parse_config(nlohmann::json::object())
                                           : load_config(config_path);
    apply(config, overrides);

    // Render fully before touching the output file so failures leave no partial output.
    std::ostringstream buffer;
    commands.at(name).second(config, buffer);
    if (out_path.empty()) {
      std::cout << buffer.str();
      std::cout.flush();
      if (!std::cout) throw Error(ErrorCode::kIo, "failed writing to stdout");
      return kOk;
    }
    auto write = [](const std::string& path, const std::string& text) {
      std::ofstream f(path, std::ios::binary | std::ios::trunc);
      f << text;
      f.close();
      if (!f) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
    };
    write(out_path, buffer.str());
    write(out_path + ".meta.json", metadata(name, config));
    return kOk;
  } catch (const Error& e) {
    const std::string what = e.what();
    const std::string prefix = std::string(e.category()) + ": ";
    const std::string message = what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
    const int code = e.code() == ErrorCode::kConfig ? kUsage
                     : e.code() == ErrorCode::kIo   ? kIoFailure
                                                    : kFailure;
    return report(e.category(), message, code);
  } catch (const std::exception& e) {
    return report("Internal", e.what(), kFailure);
  }
}

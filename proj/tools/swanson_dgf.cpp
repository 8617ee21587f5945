#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "swanson/cli.hpp"
#include "swanson/error.hpp"

int main(int argc, char** argv) {
  namespace cli = swanson::cli;
  CLI::App app{"Finite-temperature dynamics of the Swanson oscillator"};
  app.set_config("--config", "", "key = value settings file; flags override it");
  std::string command;
  std::string commands_help;
  for (const auto& c : cli::commands()) commands_help += (commands_help.empty() ? "" : "|") + c;
  app.add_option("command", command, commands_help)->required()->check(CLI::IsMember(cli::commands()));

  std::map<std::string, std::string> values;
  for (const auto& key : cli::setting_keys()) app.add_option("--" + key, values[key]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    cli::RunConfig cfg = cli::preset(command);
    for (const auto& key : cli::setting_keys())
      if (app.get_option("--" + key)->count() > 0) cli::apply_setting(cfg, key, values[key]);
    return cli::run(cfg, std::cout, std::cerr);
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const swanson::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

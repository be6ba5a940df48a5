#include <iostream>
#include <iterator>
#include <map>

#include <CLI11.hpp>

#include "midfix/cli.hpp"

namespace {

const std::map<std::string, std::string> kDescriptions{
    {"lattice-fixpoints", "pre-, post- and fixpoints of a monotone map (or --interval)"},
    {"lattice-galois", "mu/nu Galois law on one lattice, or all lattices up to 4 elements"},
    {"mu", "canonical points of the colimit mu(b) of a coalgebra"},
    {"nu", "finite-depth stages of the limit nu(a) of an algebra or signature"},
    {"adjunction", "hom-set bijection between CoalgToAlg(b, a) and the induced homs"},
    {"trace", "infinite traces of a coalgebra and its homs into algebras"},
    {"rel-dagger", "dagger-category laws for relations under converse"},
    {"rel-coincidence", "stage-wise duality of relation chains and their coincidence"}};

}  // namespace

int main(int argc, char** argv) {
  midfix::RunConfig config;
  std::string format = "text";

  CLI::App app{"midfix: middle fixpoints on finite lattices, coalgebras and relations"};
  app.require_subcommand(1, 1);
  for (const auto& name : midfix::command_names()) {
    CLI::App* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("inputs", config.inputs, "spec files (JSON)");
    sub->add_flag("--stdin", config.use_stdin, "read one spec from standard input");
    sub->add_option("--depth", config.depth, "limit-chain depth")->capture_default_str();
    sub->add_option("--max-rank", config.max_rank, "colimit rank bound")->capture_default_str();
    sub->add_option("--cap", config.cap, "enumeration cap")->capture_default_str();
    sub->add_option("--format", format, "text | json | dot")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();
    sub->add_option("--seed", config.seed, "seed for random suites")->capture_default_str();
    sub->add_option("--tolerance", config.tolerance, "numeric tolerance")->capture_default_str();
    sub->add_option("--random", config.random, "number of random instances")
        ->capture_default_str();
    sub->add_option("--stages", config.stages, "relation chain stages")->capture_default_str();
    sub->add_flag("--interval", config.interval, "use the shipped interval map");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? midfix::kExitOk : midfix::kExitInputError;
  }

  config.command = app.get_subcommands().front()->get_name();
  static const std::map<std::string, midfix::OutputFormat> formats{
      {"text", midfix::OutputFormat::Text},
      {"json", midfix::OutputFormat::Json},
      {"dot", midfix::OutputFormat::Dot}};
  config.format = formats.at(format);

  std::string stdin_text;
  if (config.use_stdin)
    stdin_text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());

  const midfix::RunResult result = midfix::run(config, stdin_text);
  std::cout << result.output;
  return result.exit_code;
}

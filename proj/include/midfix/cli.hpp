#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "midfix/dagger.hpp"
#include "midfix/lattice.hpp"
#include "midfix/signature.hpp"

namespace midfix {

enum class OutputFormat { Text, Json, Dot };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  bool use_stdin = false;
  std::size_t depth = 5;
  std::size_t max_rank = 5;
  std::size_t cap = kDefaultTermCap;
  std::size_t random = 0;  // > 0: run that many seeded random instances
  std::size_t stages = 32;
  OutputFormat format = OutputFormat::Text;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  bool interval = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

struct RunResult {
  int exit_code = kExitOk;
  std::string output;
};

const std::vector<std::string>& command_names();

/// Executes one command. Never throws for bad input: errors become exit
/// code 2 with a diagnostic report. `stdin_text` is consulted when
/// config.use_stdin is set.
RunResult run(const RunConfig& config, const std::string& stdin_text = {});

/// A labelled digraph for rendering.
struct Diagram {
  std::string name;
  std::vector<std::string> nodes;
  struct Edge {
    std::size_t from;
    std::size_t to;
    std::string label;
  };
  std::vector<Edge> edges;
};

std::string emit_dot(const Diagram& d);

/// Hasse diagram: covering pairs only, drawn bottom to top.
Diagram lattice_diagram(const FinLattice& l);

/// The first n stages X -> F X -> ... -> F^{n-1} X, nodes labelled with
/// |F^k X| and edges b, Fb, F^2b, ...; `structure` names the chain map.
Diagram mu_chain_diagram(const Signature& sig, std::size_t generators, std::size_t n,
                         const std::string& structure = "b");

/// The limit chain X <- F X <- ... drawn with edges pointing down the chain.
Diagram nu_chain_diagram(const Signature& sig, std::size_t generators, std::size_t n,
                         const std::string& structure = "a");

Diagram rel_chain_diagram(const RelChain& chain, const std::string& structure = "c");

}  // namespace midfix

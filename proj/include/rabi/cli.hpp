#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rabi/matrices.hpp"

namespace rabi::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kNonConvergence = 3,
};

/// Environment variable naming a key=value file of option defaults.
inline constexpr const char* kConfigEnv = "RABI_SPECTRA_CONFIG";

struct SpectrumOptions {
  double g = 0.2;
  double delta = 1.0;
  Branch branch = Branch::Plus;
  Parity parity = Parity::Even;
  long levels = 10;
  double tol = 1e-9;
  long max_dim = 1L << 20;  ///< largest chain truncation tried before giving up
  std::string out;
};

struct ResidualOptions {
  double g = 0.2;
  double delta = 1.0;
  Branch branch = Branch::Plus;
  long n_min = 50;
  long n_max = 800;
  double tol = 1e-9;
  std::string out;
};

struct VerifyOptions {
  double g = 0.2;
  double delta = 1.0;
  long dim = 256;
  std::string suite = "all";
};

struct PolyOptions {
  long n = 0;
  long m = 0;
  double x_min = 0.5;
  double x_max = 3.0;
  long points = 11;
  std::string out;
};

int cmd_spectrum(const SpectrumOptions& opts, std::ostream& out, std::ostream& err);
int cmd_residuals(const ResidualOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_poly(const PolyOptions& opts, std::ostream& out, std::ostream& err);

/// Parses key=value lines; blank lines and '#' comments are skipped.
std::map<std::string, std::string> read_config(const std::string& path);

/// Full command-line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rabi::cli

//
// Copyright 2026 The anonarray Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line front end. Kept in a header so the test suite can drive it
// in-process with captured streams.
//
// Exit codes:
//   0  success
//   1  usage, parse or schema error
//   2  verify --r: some credential appears fewer than r times
//   3  hard-constraint violation in the input array
//   4  construct: row budget exhausted
//   5  infeasible constraint system

#ifndef ANONARRAY_TOOLS_CLI_APP_HPP_
#define ANONARRAY_TOOLS_CLI_APP_HPP_

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "anonarray/anonarray.hpp"

namespace anonarray::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kViolation = 2,
  kHardViolation = 3,
  kBudgetExceeded = 4,
  kInfeasible = 5,
};

namespace detail {

struct Inputs {
  std::string schema;
  std::string array;
  std::string constraints;
};

inline ConstraintSet load_optional_constraints(const std::string& path,
                                               const AttributeSchema& schema) {
  if (path.empty()) return ConstraintSet();
  return io::load_constraints(path, schema);
}

inline void print_hard_violations(std::ostream& out,
                                  const std::vector<HardViolation>& violations,
                                  const AccessProfileArray& array) {
  for (const HardViolation& v : violations) {
    out << "hard violation: row " << vertex_label(array, v.row)
        << " contains " << v.constraint.describe(array.schema()) << "\n";
  }
}

inline void print_feasibility(std::ostream& out,
                              const FeasibilityReport& report,
                              const AttributeSchema& schema) {
  out << "feasible: " << (report.feasible ? "yes" : "no") << "\n";
  for (const Credential& c : report.implicit_hard) {
    out << "implicit hard: " << c.describe(schema) << "\n";
  }
  for (const InfeasibilityWitness& w : report.witnesses) {
    out << "witness: " << w.credential.describe(schema) << " (" << w.reason
        << ")\n";
  }
  for (const Credential& c : report.inert) {
    out << "warning: " << c.describe(schema)
        << " is larger than t and has no effect\n";
  }
}

inline void write_text(const std::string& path, const std::string& text,
                       std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError(path, 0, 0, "cannot write file");
  file << text;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Verify, score and construct anonymizing arrays"};
  app.require_subcommand(1);
  unsigned threads = 0;
  bool json = false;

  detail::Inputs in;
  std::size_t t = 0;

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Compute the anonymity guarantee r for credential size t");
  std::optional<std::int64_t> r_target;
  verify->add_option("schema", in.schema, "Schema JSON")->required();
  verify->add_option("array", in.array, "Array CSV")->required();
  verify->add_option("constraints", in.constraints, "Constraints JSON");
  verify->add_option("--t", t, "Credential size")->required();
  verify->add_option("--r", r_target, "Required guarantee; enables validation");
  verify->add_option("--threads", threads, "Worker threads (0 = all cores)");
  verify->add_flag("--json", json, "Machine-readable output");

  // profile
  auto* profile = app.add_subcommand(
      "profile", "List (t, r) pairs for increasing t until r drops to 1");
  std::optional<std::size_t> t_max;
  profile->add_option("schema", in.schema, "Schema JSON")->required();
  profile->add_option("array", in.array, "Array CSV")->required();
  profile->add_option("constraints", in.constraints, "Constraints JSON");
  profile->add_option("--t-max", t_max, "Largest t to evaluate");
  profile->add_option("--threads", threads, "Worker threads (0 = all cores)");
  profile->add_flag("--json", json, "Machine-readable output");

  // homogeneity
  auto* homogeneity = app.add_subcommand(
      "homogeneity", "Local and global homogeneity scores");
  bool with_closeness = false;
  std::string hypergraph_format;
  std::string hypergraph_out;
  homogeneity->add_option("schema", in.schema, "Schema JSON")->required();
  homogeneity->add_option("array", in.array, "Array CSV")->required();
  homogeneity->add_option("--t", t, "Credential size")->required();
  homogeneity->add_flag("--closeness", with_closeness,
                        "Also dump the closeness matrix and histograms");
  homogeneity->add_option("--hypergraph", hypergraph_format,
                          "Export the multi-hypergraph (json or text)");
  homogeneity->add_option("--hypergraph-out", hypergraph_out,
                          "Hypergraph output file (default: stdout)");
  homogeneity->add_option("--threads", threads,
                          "Worker threads (0 = all cores)");
  homogeneity->add_flag("--json", json, "Machine-readable output");

  // construct
  auto* construct = app.add_subcommand(
      "construct", "Append padding rows until the array is (r,t)-anonymous");
  ConstructionConfig config;
  std::string output;
  std::optional<std::size_t> max_rows;
  construct->add_option("schema", in.schema, "Schema JSON")->required();
  construct->add_option("--base", in.array, "Base array CSV");
  construct->add_option("--constraints", in.constraints, "Constraints JSON");
  construct->add_option("--r", config.r_target, "Target guarantee")->required();
  construct->add_option("--t", config.t, "Credential size")->required();
  construct->add_option("--seed", config.seed, "Random seed")
      ->default_val(0);
  construct->add_option("--max-rows", max_rows, "Cap on total rows");
  construct->add_option("--homogeneity-weight", config.homogeneity_weight,
                        "Penalty on added closeness, in [0,1]")
      ->default_val(0.0);
  construct->add_option("--candidates", config.candidates_per_row,
                        "Candidate rows per step")
      ->default_val(64);
  construct->add_option("--restarts", config.restarts,
                        "Extra randomized attempts")
      ->default_val(3);
  construct->add_option("--output,-o", output,
                        "Output CSV (default: stdout, summary to stderr)");
  construct->add_option("--threads", threads,
                        "Worker threads (0 = all cores)");
  construct->add_flag("--json", json, "Machine-readable summary");

  // constraints derive
  auto* constraints_cmd =
      app.add_subcommand("constraints", "Constraint analysis");
  constraints_cmd->require_subcommand(1);
  auto* derive = constraints_cmd->add_subcommand(
      "derive", "Derive implicit hard constraints and check feasibility");
  derive->add_option("schema", in.schema, "Schema JSON")->required();
  derive->add_option("constraints", in.constraints, "Constraints JSON")
      ->required();
  derive->add_option("--t", t, "Credential size")->required();
  derive->add_flag("--json", json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  const Execution exec{threads};
  std::optional<AttributeSchema> loaded_schema;
  try {
    loaded_schema = io::load_schema(in.schema);
    const AttributeSchema& schema = *loaded_schema;

    if (verify->parsed()) {
      const AccessProfileArray array = io::load_array(in.array, schema);
      const ConstraintSet constraints =
          detail::load_optional_constraints(in.constraints, schema);
      if (r_target) {
        const ValidationResult result =
            validate(array, *r_target, t, constraints, exec);
        if (json) {
          out << io::validation_to_json(result, *r_target, schema).dump(2)
              << "\n";
        } else {
          out << "t = " << t << "\nr = " << result.report.r << "\n";
          detail::print_hard_violations(out, result.report.hard_violations,
                                        array);
          for (const Violation& v : result.violations) {
            out << "violation: " << v.credential.describe(schema)
                << " appears " << v.count << " time(s), needs " << *r_target
                << " (" << to_string(v.kind) << ")\n";
          }
          out << (result.valid ? "valid" : "not valid") << " for r = "
              << *r_target << "\n";
        }
        if (!result.report.hard_violations.empty()) return kHardViolation;
        return result.valid ? kOk : kViolation;
      }
      const GuaranteeReport report =
          compute_guarantee(array, t, constraints, exec);
      if (json) {
        out << io::guarantee_to_json(report, schema).dump(2) << "\n";
      } else {
        out << "t = " << t << "\nr = " << report.r << "\n";
        if (report.min_witness) {
          out << "witness: " << report.min_witness->credential.describe(schema)
              << " appears " << report.min_witness->count << " time(s)\n";
        }
        detail::print_hard_violations(out, report.hard_violations, array);
        for (const CredentialCount& s : report.soft_appearances) {
          out << "soft: " << s.credential.describe(schema) << " appears "
              << s.count << " time(s)\n";
        }
        for (std::size_t a : schema.trivial_attributes()) {
          out << "warning: attribute '" << schema.name(a)
              << "' has a single value\n";
        }
        for (const Credential& c : report.inert_constraints) {
          out << "warning: " << c.describe(schema)
              << " is larger than t and has no effect\n";
        }
      }
      return kOk;
    }

    if (profile->parsed()) {
      const AccessProfileArray array = io::load_array(in.array, schema);
      const ConstraintSet constraints =
          detail::load_optional_constraints(in.constraints, schema);
      const AnonymityProfile result =
          anonymity_profile(array, constraints, t_max, exec);
      if (json) {
        out << io::profile_to_json(result, schema).dump(2) << "\n";
      } else {
        out << "t\tr\n";
        for (const ProfileEntry& e : result.entries) {
          out << e.t << "\t" << e.r << "\n";
        }
        detail::print_hard_violations(out, result.hard_violations, array);
      }
      return kOk;
    }

    if (homogeneity->parsed()) {
      const AccessProfileArray array = io::load_array(in.array, schema);
      std::optional<HypergraphFormat> format;
      if (!hypergraph_format.empty()) {
        format = parse_hypergraph_format(hypergraph_format);
      }
      const HomogeneityReport report = local_homogeneity(array, t, exec);
      if (json) {
        io::Json doc = io::homogeneity_to_json(report, array);
        if (with_closeness) {
          doc["closeness"] = io::closeness_to_json(
              closeness_matrix(array, t, exec));
        }
        out << doc.dump(2) << "\n";
      } else {
        out << "min " << format_decimal(report.min) << " max "
            << format_decimal(report.max) << " global "
            << format_decimal(report.global) << "\n";
        for (std::size_t i = 0; i < report.local.size(); ++i) {
          out << "row " << vertex_label(array, i) << "\t"
              << format_decimal(report.local[i]) << "\t("
              << format_exact(report.local[i]) << ", "
              << report.neighbor_counts[i] << " neighbors)\n";
        }
        if (!report.isolated.empty()) {
          out << "isolated rows score C(k,t) = "
              << binomial(array.num_columns(), t) << "\n";
        }
        if (with_closeness) {
          const ClosenessMatrix matrix = closeness_matrix(array, t, exec);
          out << "closeness\n";
          for (std::size_t i = 0; i < matrix.size(); ++i) {
            for (std::size_t j = 0; j < matrix.size(); ++j) {
              out << (j > 0 ? "\t" : "") << format_exact(matrix.at(i, j));
            }
            out << "\n";
          }
        }
      }
      if (format) {
        detail::write_text(hypergraph_out,
                           export_hypergraph(array, t, *format, exec), out);
      }
      return kOk;
    }

    if (construct->parsed()) {
      const AccessProfileArray base =
          in.array.empty() || in.array == "-"
              ? AccessProfileArray(schema)
              : io::load_array(in.array, schema);
      const ConstraintSet constraints =
          detail::load_optional_constraints(in.constraints, schema);
      config.max_rows = max_rows;
      const bool array_to_stdout = output.empty() || output == "-";
      std::ostream& summary = array_to_stdout ? err : out;
      try {
        const ConstructionResult result =
            construct_padding(base, constraints, config, exec);
        detail::write_text(output, io::serialize_array(result.array), out);
        const Rational global =
            result.array.num_rows() > 0
                ? global_homogeneity(result.array, config.t, exec)
                : Rational(0);
        if (json) {
          io::Json doc;
          doc["format_version"] = io::kFormatVersion;
          doc["status"] = "ok";
          doc["rows"] = result.array.num_rows();
          doc["padding_count"] = result.padding_count;
          doc["lower_bound"] = result.lower_bound;
          doc["meets_lower_bound"] = result.meets_lower_bound;
          doc["achieved_r"] = result.achieved.r;
          doc["global_homogeneity"] = io::rational_to_json(global);
          doc["attempt"] = result.attempt;
          summary << doc.dump(2) << "\n";
        } else {
          summary << "rows " << result.array.num_rows() << " (padding "
                  << result.padding_count << ", lower bound "
                  << result.lower_bound
                  << (result.meets_lower_bound ? ", optimal" : "") << ")\n"
                  << "achieved r = " << result.achieved.r << " at t = "
                  << config.t << "\n"
                  << "global homogeneity " << format_decimal(global) << "\n";
        }
        return kOk;
      } catch (const BudgetExceeded& e) {
        detail::write_text(output, io::serialize_array(e.partial()), out);
        if (json) {
          io::Json doc;
          doc["format_version"] = io::kFormatVersion;
          doc["status"] = "budget_exceeded";
          doc["rows"] = e.partial().num_rows();
          doc["remaining"] = io::deficiency_to_json(e.remaining(), schema);
          summary << doc.dump(2) << "\n";
        } else {
          summary << "error: " << e.what() << "\n";
          for (const auto& [credential, need] : e.remaining()) {
            summary << "short: " << credential.describe(schema) << " needs "
                    << need << " more\n";
          }
        }
        return kBudgetExceeded;
      }
    }

    if (derive->parsed()) {
      const ConstraintSet constraints =
          io::load_constraints(in.constraints, schema);
      const FeasibilityReport report = check_feasibility(schema, constraints, t);
      if (json) {
        out << io::feasibility_to_json(report, t, schema).dump(2) << "\n";
      } else {
        detail::print_feasibility(out, report, schema);
      }
      return report.feasible ? kOk : kInfeasible;
    }
  } catch (const FeasibilityError& e) {
    err << "error: " << e.what() << "\n";
    // The summary stream may be stdout; witnesses always go to stderr.
    detail::print_feasibility(err, e.report(), *loaded_schema);
    return kInfeasible;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const BaseHardViolation& e) {
    err << "error: " << e.what() << "\n";
    for (const HardViolation& v : e.violations()) {
      err << "hard violation: row " << v.row + 1 << " contains "
          << v.constraint.describe(*loaded_schema) << "\n";
    }
    return kHardViolation;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace anonarray::cli

#endif  // ANONARRAY_TOOLS_CLI_APP_HPP_

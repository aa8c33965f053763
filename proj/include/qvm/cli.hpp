#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qvm/catalog.hpp"
#include "qvm/io.hpp"
#include "qvm/properties.hpp"

namespace qvm::cli {

enum ExitCode { Ok = 0, PropertyFailure = 1, InputError = 2 };

std::string catalog_text(const PainleveReport& r);
io::json catalog_json(const PainleveReport& r);

std::string selfcheck_text(const std::vector<SuiteResult>& rs, const SuiteOptions& opt);
io::json selfcheck_json(const std::vector<SuiteResult>& rs, const SuiteOptions& opt);

// The whole command line; returns the exit code. Data goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qvm::cli

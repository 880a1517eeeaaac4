#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dbcat/dsl.hpp"
#include "dbcat/report.hpp"

namespace dbcat {

enum class Format { Text, Lines };

struct CommandResult {
    std::string command;
    std::string body;
    Report report;
    bool show_checks = true;

    int exit_code() const { return report.passed() ? 0 : 1; }
};

/// The commands `eval`, `powerview`, `iso`, `flux`, `compose`, `laws`,
/// `check-model`, `check-functor`, `gamma-iso`, `duality` and `print`.
/// Throws Error on unknown commands, bad arguments and exceeded budgets.
CommandResult run_command(const std::string& command, const std::vector<std::string>& args, const Workspace& ws);

std::string render(const CommandResult& r, Format format);

/// Full command line handling; returns the process exit status (0, 1 or 2).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dbcat

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace divorce::cli
{
    /// Process exit codes. `no` means "not stable" for check/verify and "not reachable" for
    /// reach; inconclusive is only used by reach.
    enum ExitCode : int
    {
        ok = 0,
        no = 1,
        parse_failure = 2,
        inconclusive = 3,
        semantic_failure = 4,
        guard_exceeded = 5
    };

    /// Runs the `divorce` command line; args[0] is the program name.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}

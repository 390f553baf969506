#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gibbscert::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kNotCertified = 2,  // certify: Indeterminate; decay: any non-Unique verdict
    kInadmissible = 3,
    kCapExceeded = 4,
    kCheckFailed = 5,
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gibbscert::cli

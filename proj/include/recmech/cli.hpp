#pragma once

namespace recmech {

/// Entry point behind the `recmech` executable. Exit codes: 0 success, 1 usage
/// error (diagnostic names the offending flag), 2 data/validation error
/// (diagnostic names file and row where applicable). Never throws.
int cli_main(int argc, const char* const* argv);

}  // namespace recmech

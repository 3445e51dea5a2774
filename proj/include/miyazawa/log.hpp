#pragma once

namespace miyazawa {

// Installs a stderr logger whose level comes from MIYAZAWA_LOG
// (error, warn, info, debug). Defaults to warn.
void configure_logging();

}  // namespace miyazawa

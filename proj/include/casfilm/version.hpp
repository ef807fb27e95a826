#pragma once

namespace casfilm {

inline const char* version_string() { return "casfilm 1.0.0"; }

} // namespace casfilm

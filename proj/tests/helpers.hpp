#pragma once

#include <string>

// Directory holding the bundled CSVs, injected by the build.
inline std::string data_dir()
{
#ifdef CSLBG_SOURCE_DATA_DIR
    return CSLBG_SOURCE_DATA_DIR;
#else
    return "data";
#endif
}

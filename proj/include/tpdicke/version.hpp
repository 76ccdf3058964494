#pragma once

#define TPDICKE_VERSION "1.0.0"

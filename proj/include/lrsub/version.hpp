#pragma once

#define LRSUB_VERSION "1.0.0"

#pragma once

#define CANTORLAB_VERSION "0.1.0"

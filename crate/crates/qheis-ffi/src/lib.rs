// C ABI surface; filled in as the core library lands.

from hyperspec.cli import main

raise SystemExit(main())

from gerstkit.cli import main

raise SystemExit(main())
